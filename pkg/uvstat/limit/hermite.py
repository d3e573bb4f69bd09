from collections import Counter
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np


def hermite(k: int, x):
    """
    probabilists' Hermite polynomial: H_0 = 1, H_1 = x, H_{n+1} = x H_n - n H_{n-1}
    """
    if k < 0:
        raise ValueError(f"Hermite degree must be nonnegative, got {k}")
    x = np.asarray(x, dtype=np.float64)
    previous, current = np.ones_like(x), x.copy()
    if k == 0:
        return previous if previous.ndim else float(previous)
    for degree in range(1, k):
        previous, current = current, x * current - degree * previous
    return current if current.ndim else float(current)


def hermite_table(degree: int, x) -> np.ndarray:
    """
    rows H_0(x)..H_degree(x), shape (degree + 1,) + x.shape
    """
    x = np.asarray(x, dtype=np.float64)
    out = np.empty((degree + 1,) + x.shape)
    out[0] = 1.0
    if degree >= 1:
        out[1] = x
    for n in range(1, degree):
        out[n + 1] = x * out[n] - n * out[n - 1]
    return out


@dataclass(frozen=True)
class MultiplicityProfile:
    """
    distinct indices j_1 < ... < j_s of a multi-index with their multiplicities r_1..r_s
    """

    indices: Tuple[int, ...]
    multiplicities: Tuple[int, ...]

    @property
    def order(self) -> int:
        return sum(self.multiplicities)

    def nu(self, j: int) -> int:
        return dict(zip(self.indices, self.multiplicities)).get(j, 0)

    def as_dict(self) -> Dict[int, int]:
        return dict(zip(self.indices, self.multiplicities))

    def hermite_product(self, tau: np.ndarray) -> np.ndarray:
        """
        prod_l H_{r_l}(tau_{j_l}) where tau[..., j - 1] holds tau_j
        """
        tau = np.asarray(tau, dtype=np.float64)
        out = np.ones(tau.shape[:-1])
        for j, r in zip(self.indices, self.multiplicities):
            out = out * hermite(r, tau[..., j - 1])
        return out

    def monomial(self, tau: np.ndarray) -> np.ndarray:
        tau = np.asarray(tau, dtype=np.float64)
        out = np.ones(tau.shape[:-1])
        for j, r in zip(self.indices, self.multiplicities):
            out = out * tau[..., j - 1] ** r
        return out


def multiplicity(index: Sequence[int]) -> MultiplicityProfile:
    counts = sorted(Counter(int(i) for i in index).items())
    return MultiplicityProfile(
        indices=tuple(j for j, _ in counts), multiplicities=tuple(r for _, r in counts)
    )


def hermite_moment_bound(profiles: Sequence[MultiplicityProfile], tau) -> float:
    """
    empirical max over profiles of E|prod H_r(tau_j)| from a (R, dim) sample of tau vectors
    """
    if not profiles:
        return 0.0
    tau = np.atleast_2d(np.asarray(tau, dtype=np.float64))
    return max(float(np.mean(np.abs(p.hermite_product(tau)))) for p in profiles)
