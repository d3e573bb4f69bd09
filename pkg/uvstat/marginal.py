import abc
import logging
import math
from typing import Callable

import numpy as np
from scipy import integrate

from uvstat.enums import MarginalLawId
from uvstat.exceptions import QuadratureError, SupportError

logger = logging.getLogger("uvstat.marginal")

QUADRATURE_EPSABS = 1e-10
RESIDUAL_MASS = 1e-12


class MarginalLaw:
    law_id: MarginalLawId
    discrete = False

    def __eq__(self, other):
        return isinstance(other, MarginalLaw) and self.law_id == other.law_id

    def __hash__(self):
        return hash(self.law_id)

    def __repr__(self):
        return f"{type(self).__name__}()"

    @abc.abstractmethod
    def contains(self, t) -> np.ndarray:
        raise NotImplementedError

    @abc.abstractmethod
    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        raise NotImplementedError

    @abc.abstractmethod
    def cdf(self, x) -> np.ndarray:
        raise NotImplementedError

    @abc.abstractmethod
    def expectation(self, func: Callable, epsabs: float = QUADRATURE_EPSABS):
        """
        E func(Y); func maps a scalar point to a scalar or an array
        """
        raise NotImplementedError

    def check_support(self, t):
        t = np.asarray(t, dtype=np.float64)
        inside = self.contains(t)
        if not np.all(inside):
            bad = t[~inside] if t.ndim else t
            raise SupportError(f"points outside the support of {self.law_id.value}: {np.ravel(bad)[:5]}")
        return t


class UniformSymmetric(MarginalLaw):
    """
    density 1/2 on [-1, 1]
    """

    law_id = MarginalLawId.uniform_symmetric

    def contains(self, t):
        t = np.asarray(t, dtype=np.float64)
        return (t >= -1.0) & (t <= 1.0)

    def sample(self, rng, size):
        return rng.uniform(-1.0, 1.0, size)

    def cdf(self, x):
        return np.clip((np.asarray(x, dtype=np.float64) + 1.0) / 2.0, 0.0, 1.0)

    def expectation(self, func, epsabs=QUADRATURE_EPSABS):
        at_zero = np.asarray(func(0.0))
        if at_zero.ndim == 0:
            value, error = integrate.quad(
                lambda t: 0.5 * func(t), -1.0, 1.0, epsabs=epsabs, epsrel=epsabs, limit=200
            )
        else:
            value, error = integrate.quad_vec(
                lambda t: 0.5 * np.asarray(func(t)), -1.0, 1.0, epsabs=epsabs, epsrel=epsabs
            )
        if np.max(error) > 100 * epsabs:
            raise QuadratureError("quadrature over [-1, 1] did not converge", float(np.max(error)))
        return value


class SignedGeometric(MarginalLaw):
    """
    masses 2^(-|k|-1) on the nonzero integers
    """

    law_id = MarginalLawId.signed_geometric
    discrete = True

    def __init__(self, residual_mass: float = RESIDUAL_MASS):
        self.cutoff = self.cutoff_for(residual_mass)

    @staticmethod
    def cutoff_for(residual_mass: float) -> int:
        # P(|Y| > K) = 2^-K
        return max(1, math.ceil(-math.log2(residual_mass)))

    def contains(self, t):
        t = np.asarray(t, dtype=np.float64)
        return (t != 0) & (np.floor(t) == t) & np.isfinite(t)

    def sample(self, rng, size):
        # inverse CDF of |Y|: P(|Y| >= k) = 2^(1-k), plus an independent sign bit
        u = 1.0 - rng.random(size)
        magnitude = np.maximum(np.ceil(-np.log2(u)), 1.0)
        sign = np.where(rng.random(size) < 0.5, -1.0, 1.0)
        return sign * magnitude

    def mass(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=np.float64)
        return np.where(self.contains(t), np.exp2(-np.abs(t) - 1.0), 0.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        k = np.floor(np.abs(x))
        # P(Y <= -j) = 2^-j for j >= 1
        negative = np.exp2(-np.maximum(np.ceil(-x), 1.0))
        positive = 1.0 - np.exp2(-k - 1.0)
        return np.where(x < 0, np.where(x <= -1, negative, 0.5), np.where(x >= 1, positive, 0.5))

    def support(self, cutoff: int = None) -> np.ndarray:
        cutoff = cutoff or self.cutoff
        k = np.arange(1, cutoff + 1, dtype=np.float64)
        return np.concatenate([-k[::-1], k])

    def expectation(self, func, epsabs=QUADRATURE_EPSABS):
        points = self.support()
        weights = self.mass(points)
        values = [np.asarray(func(t), dtype=np.float64) for t in points]
        return np.tensordot(weights, np.stack(values), axes=1)


def get_marginal(law_id: MarginalLawId) -> MarginalLaw:
    law_id = MarginalLawId(law_id)
    if law_id == MarginalLawId.uniform_symmetric:
        return UniformSymmetric()
    elif law_id == MarginalLawId.signed_geometric:
        return SignedGeometric()
    raise NotImplementedError(f"Unsupported marginal {law_id}")
