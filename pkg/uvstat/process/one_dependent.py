import math

import numpy as np

from uvstat.common import stream
from uvstat.enums import ProcessId, StreamComponent
from uvstat.process import MixingProfile, Process

COINCIDENCE_PROBABILITY = 0.25


class OneDependentShift(Process):
    """
    X_i = Y_{i + xi_i} with iid Y from the marginal and iid fair 0/1 shifts xi,
    a stationary 1-dependent sequence with P(X_i = X_{i+1}) >= 1/4
    """

    process_id = ProcessId.one_dependent_shift

    def draw(self, rng, n):
        return self.draw_with_shifts(rng, n)[0]

    def sample_path_with_shifts(self, n, seed, replicate_id):
        """
        the path together with the underlying Y_1..Y_{n+1} and shifts, same stream as sample_path
        """
        return self.draw_with_shifts(stream(seed, replicate_id, StreamComponent.path, n), n)

    def draw_with_shifts(self, rng, n):
        values = self.marginal.sample(rng, n + 1)
        shifts = rng.integers(0, 2, n)
        return values[np.arange(n) + shifts], values, shifts

    def mixing_profile(self):
        # coincidences make the joint law of (X_1, X_2) singular w.r.t. the product, so psi(1) is infinite
        return MixingProfile(
            dependence_range=1, alpha_bound=0.25, phi_bound=1.0, psi_bound=math.inf
        )

    @property
    def satisfies_ac(self):
        # on a discrete support coincidences stay inside the product support
        return self.marginal.discrete

    def analytic_lag_moment(self, k, l, lag):
        if k == 0 or l == 0:
            return 1.0 if k == l == 0 else 0.0
        if lag == 0:
            return 1.0 if k == l else 0.0
        if lag == 1:
            # only the coincidence X_1 = X_2 = Y_2 contributes
            return COINCIDENCE_PROBABILITY if k == l else 0.0
        return 0.0
