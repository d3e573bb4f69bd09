import abc
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from uvstat.basis import Basis
from uvstat.common import stream
from uvstat.enums import ProcessId, StreamComponent
from uvstat.marginal import MarginalLaw

logger = logging.getLogger("uvstat.process")

BATCHES = 50


@dataclass(frozen=True)
class MixingProfile:
    """
    analytic mixing coefficients; beyond dependence_range all of them vanish
    """

    dependence_range: int
    alpha_bound: float
    phi_bound: float
    psi_bound: float

    def alpha(self, i: int) -> float:
        return 0.0 if i > self.dependence_range else self.alpha_bound

    def phi(self, i: int) -> float:
        return 0.0 if i > self.dependence_range else self.phi_bound

    def psi(self, i: int) -> float:
        return 0.0 if i > self.dependence_range else self.psi_bound

    @property
    def sqrt_phi_summable(self) -> bool:
        # finitely many nonzero terms, each bounded by 1
        return math.isfinite(self.phi_bound)


class LagMoment(NamedTuple):
    value: float
    stderr: float


class Process:
    """
    stationary sequence with a known marginal law
    """

    process_id: ProcessId

    def __init__(self, marginal: MarginalLaw):
        self.marginal = marginal

    def __eq__(self, other):
        return (
            isinstance(other, Process)
            and self.process_id == other.process_id
            and self.marginal == other.marginal
        )

    def __hash__(self):
        return hash((self.process_id, self.marginal))

    def __repr__(self):
        return f"{type(self).__name__}(marginal={self.marginal!r})"

    @abc.abstractmethod
    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        raise NotImplementedError

    @abc.abstractmethod
    def mixing_profile(self) -> MixingProfile:
        raise NotImplementedError

    @property
    @abc.abstractmethod
    def satisfies_ac(self) -> bool:
        """
        joint laws of distinct-index observations absolutely continuous w.r.t. the product law
        """
        raise NotImplementedError

    @abc.abstractmethod
    def analytic_lag_moment(self, k: int, l: int, lag: int) -> Optional[float]:
        raise NotImplementedError

    def sample_path(
        self, n: int, seed: int, replicate_id: int, component: StreamComponent = StreamComponent.path
    ) -> np.ndarray:
        if n < 1:
            raise ValueError(f"path length must be positive, got {n}")
        return self.draw(stream(seed, replicate_id, component, n), n)

    def lag_moment(
        self,
        basis: Basis,
        k: int,
        l: int,
        lag: int,
        mc_size: int = 100_000,
        seed: int = 0,
        analytic: bool = True,
    ) -> LagMoment:
        """
        E e_k(X_1) e_l(X_{1+lag}), analytic where the joint structure is known,
        otherwise by a single long path with batch-means standard error
        """
        if lag < 0:
            raise ValueError(f"lag must be nonnegative, got {lag}")
        basis.check_index([k, l])
        if analytic:
            value = self.analytic_lag_moment(k, l, lag)
            if value is not None:
                return LagMoment(value, 0.0)
        path = self.sample_path(mc_size + lag, seed, 0, StreamComponent.lag_moment)
        rows = basis.matrix([k, l], path)
        products = rows[0, : mc_size] * rows[1, lag : lag + mc_size]
        return LagMoment(float(np.mean(products)), float(batch_stderr(products)))


def batch_stderr(values: np.ndarray, batches: int = BATCHES) -> float:
    """
    standard error of the mean of a weakly dependent sequence by non-overlapping batch means
    """
    size = values.shape[-1] // batches
    if size < 1:
        return math.nan
    means = values[..., : size * batches].reshape(values.shape[:-1] + (batches, size)).mean(axis=-1)
    return np.std(means, axis=-1, ddof=1) / math.sqrt(batches)
