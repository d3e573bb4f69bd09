from uvstat.enums import ProcessId
from uvstat.process import MixingProfile, Process


class IIDProcess(Process):
    process_id = ProcessId.iid

    def draw(self, rng, n):
        return self.marginal.sample(rng, n)

    def mixing_profile(self):
        return MixingProfile(dependence_range=0, alpha_bound=0.0, phi_bound=0.0, psi_bound=0.0)

    @property
    def satisfies_ac(self):
        return True

    def analytic_lag_moment(self, k, l, lag):
        if lag == 0:
            return 1.0 if k == l else 0.0
        return 1.0 if k == l == 0 else 0.0
