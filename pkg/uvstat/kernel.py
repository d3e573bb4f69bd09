import itertools
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Dict, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy import special

from uvstat.basis import Basis
from uvstat.common import pairwise_sum, stream
from uvstat.enums import EigenFormula, StreamComponent
from uvstat.exceptions import IndexRangeError, OrderTooLargeError

logger = logging.getLogger("uvstat.kernel")

MAX_SYMMETRIZE_ORDER = 6
EVAL_CHUNK = 8192

MultiIndex = Tuple[int, ...]


@dataclass(frozen=True)
class EigenSeries:
    """
    coefficients f_{k,...,k} = scale * lambda_k of a rank-diagonal kernel
    """

    formula: EigenFormula
    values: Tuple[float, ...] = ()
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "formula", EigenFormula(self.formula))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.formula == EigenFormula.explicit and not all(map(math.isfinite, self.values)):
            raise ValueError("explicit eigenvalues must be finite")

    @classmethod
    def wiener(cls):
        return cls(EigenFormula.wiener)

    @classmethod
    def one_over_k(cls):
        return cls(EigenFormula.one_over_k)

    @classmethod
    def explicit(cls, values: Sequence[float]):
        return cls(EigenFormula.explicit, tuple(values))

    @property
    def summable_abs(self) -> bool:
        return self.formula != EigenFormula.one_over_k

    def lambdas(self, count: int) -> np.ndarray:
        """
        lambda_1..lambda_count
        """
        k = np.arange(1, count + 1, dtype=np.float64)
        if self.formula == EigenFormula.wiener:
            raw = (np.pi * (k - 0.5)) ** -2.0
        elif self.formula == EigenFormula.one_over_k:
            raw = 1.0 / k
        else:
            raw = np.zeros(count)
            head = self.values[:count]
            raw[: len(head)] = head
        return self.scale * raw

    def tail(self, n: int) -> float:
        """
        sum_{k > n} |lambda_k|
        """
        if not self.summable_abs:
            return math.inf
        if self.formula == EigenFormula.wiener:
            # sum_{k>n} 1/(k - 1/2)^2 is the trigamma function at n + 1/2
            return abs(self.scale) * float(special.polygamma(1, n + 0.5)) / np.pi ** 2
        return abs(self.scale) * float(np.sum(np.abs(self.values[n:])))

    def scaled(self, factor: float) -> "EigenSeries":
        return replace(self, scale=self.scale * factor)


class DefectEstimate(NamedTuple):
    value: float
    stderr: float


@dataclass(frozen=True)
class KernelSpec:
    """
    kernel of order m over a basis: a sparse coefficient tensor or an eigen series,
    optionally with a constant value on the full diagonal t_1 = ... = t_m
    """

    order: int
    basis: Basis
    coeffs: Tuple[Tuple[MultiIndex, float], ...] = ()
    diagonal_override: Optional[float] = None
    eigen: Optional[EigenSeries] = None
    canonical: bool = True
    _lookup: Dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"kernel order must be positive, got {self.order}")
        if self.diagonal_override is not None and self.order < 2:
            raise ValueError("a diagonal override needs order >= 2")
        lowest = 1 if self.canonical else 0
        for index, _ in self.coeffs:
            if len(index) != self.order:
                raise ValueError(f"multi-index {index} does not match order {self.order}")
            if min(index) < lowest:
                raise ValueError(f"canonical kernels have no e_0 factor, got {index}")
            if max(index) > self.basis.max_index:
                raise IndexRangeError(f"multi-index {index} exceeds max_index {self.basis.max_index}")
        object.__setattr__(self, "_lookup", dict(self.coeffs))

    @classmethod
    def from_coefficients(
        cls,
        basis: Basis,
        coeffs: Mapping[MultiIndex, float],
        order: int = None,
        diagonal_override: float = None,
        canonical: bool = True,
    ) -> "KernelSpec":
        items = sorted((tuple(int(i) for i in k), float(v)) for k, v in coeffs.items() if v != 0)
        if order is None:
            if not items:
                raise ValueError("order is required for an empty coefficient tensor")
            order = len(items[0][0])
        return cls(
            order=order,
            basis=basis,
            coeffs=tuple(items),
            diagonal_override=diagonal_override,
            canonical=canonical,
        )

    @classmethod
    def from_eigen_series(
        cls, basis: Basis, series: EigenSeries, order: int = 2, diagonal_override: float = None
    ) -> "KernelSpec":
        return cls(order=order, basis=basis, eigen=series, diagonal_override=diagonal_override)

    @classmethod
    def splitting(cls, basis: Basis, rows: Sequence[Mapping[int, float]]) -> "KernelSpec":
        """
        product kernel h_1(t_1)...h_m(t_m) with h_j = sum_k rows[j][k] e_k
        """
        coeffs: Dict[MultiIndex, float] = {}
        for combo in itertools.product(*(sorted(row.items()) for row in rows)):
            index = tuple(k for k, _ in combo)
            coeffs[index] = float(np.prod([v for _, v in combo]))
        return cls.from_coefficients(basis, coeffs, order=len(rows))

    @property
    def is_eigen(self) -> bool:
        return self.eigen is not None

    def coefficient(self, index: MultiIndex) -> float:
        if self.is_eigen:
            k = index[0]
            if any(i != k for i in index) or k < 1:
                return 0.0
            return float(self.eigen.lambdas(k)[-1])
        return self._lookup.get(tuple(index), 0.0)

    def check_trunc(self, trunc: int = None) -> int:
        if trunc is None:
            return self.basis.max_index
        if trunc > self.basis.max_index:
            raise IndexRangeError(f"truncation {trunc} exceeds basis max_index {self.basis.max_index}")
        return int(trunc)

    def coefficients(self, trunc: int = None) -> Tuple[np.ndarray, np.ndarray]:
        """
        stored multi-indices with max <= trunc, lexicographic, as (C, m) ints and (C,) values
        """
        trunc = self.check_trunc(trunc)
        if self.is_eigen:
            k = np.arange(1, trunc + 1)
            return np.repeat(k[:, None], self.order, axis=1), self.eigen.lambdas(trunc)
        kept = [(i, v) for i, v in self.coeffs if max(i) <= trunc]
        if not kept:
            return np.zeros((0, self.order), dtype=np.int64), np.zeros(0)
        indices, values = zip(*kept)
        return np.asarray(indices, dtype=np.int64), np.asarray(values, dtype=np.float64)

    def evaluate_many(
        self, points, trunc: int = None, check: bool = True, apply_override: bool = True
    ) -> np.ndarray:
        """
        kernel values at the rows of a (T, m) point array; with apply_override=False the plain
        truncated series
        """
        points = np.asarray(points, dtype=np.float64).reshape(-1, self.order)
        if check:
            self.basis.marginal.check_support(points)
        indices, values = self.coefficients(trunc)
        out = np.empty(points.shape[0])
        for start in range(0, points.shape[0], EVAL_CHUNK):
            chunk = points[start : start + EVAL_CHUNK]
            out[start : start + chunk.shape[0]] = self._series(chunk, indices, values)
        if apply_override and self.diagonal_override is not None:
            diagonal = np.all(points == points[:, :1], axis=1)
            out[diagonal] = self.diagonal_override
        return out

    def _series(self, points: np.ndarray, indices: np.ndarray, values: np.ndarray) -> np.ndarray:
        if values.size == 0:
            return np.zeros(points.shape[0])
        if self.is_eigen:
            ks = indices[:, 0]
            product = self.basis.matrix(ks, points[:, 0], check=False)
            for slot in range(1, self.order):
                product = product * self.basis.matrix(ks, points[:, slot], check=False)
            return pairwise_sum(values[:, None] * product, axis=0)
        needed, position = np.unique(indices, return_inverse=True)
        position = position.reshape(indices.shape)
        terms = np.broadcast_to(values[:, None], (values.size, points.shape[0])).copy()
        for slot in range(self.order):
            rows = self.basis.matrix(needed, points[:, slot], check=False)
            terms *= rows[position[:, slot]]
        return pairwise_sum(terms, axis=0)

    def evaluate(self, points: Sequence[float], trunc: int = None) -> float:
        if len(points) != self.order:
            raise ValueError(f"expected {self.order} points, got {len(points)}")
        return float(self.evaluate_many([points], trunc)[0])

    def tail_mass(self, n: int) -> float:
        """
        sum of |f_i| over multi-indices with max component > n; inf when not absolutely summable
        """
        if self.is_eigen:
            return self.eigen.tail(n)
        return float(sum(abs(v) for i, v in self.coeffs if max(i) > n))

    def scaled(self, factor: float) -> "KernelSpec":
        override = None if self.diagonal_override is None else self.diagonal_override * factor
        if self.is_eigen:
            return replace(self, eigen=self.eigen.scaled(factor), diagonal_override=override)
        return replace(
            self, coeffs=tuple((i, v * factor) for i, v in self.coeffs), diagonal_override=override
        )

    def symmetrize(self) -> "KernelSpec":
        """
        f_0(t_1..t_m) = sum over all permutations of f, stored on every permuted index
        """
        if self.order > MAX_SYMMETRIZE_ORDER:
            raise OrderTooLargeError(
                f"symmetrize supports order <= {MAX_SYMMETRIZE_ORDER}, got {self.order}"
            )
        if self.is_eigen:
            return self.scaled(math.factorial(self.order))
        total: Dict[MultiIndex, float] = {}
        for index, value in self.coeffs:
            for perm in itertools.permutations(range(self.order)):
                key = tuple(index[p] for p in perm)
                total[key] = total.get(key, 0.0) + value
        override = self.diagonal_override
        if override is not None:
            override *= math.factorial(self.order)
        return KernelSpec.from_coefficients(
            self.basis, total, order=self.order, diagonal_override=override, canonical=self.canonical
        )

    def is_symmetric(self, rel_tol: float = 1e-12) -> bool:
        if self.is_eigen:
            return True
        for index, value in self.coeffs:
            for perm in set(itertools.permutations(index)):
                if not math.isclose(self._lookup.get(perm, 0.0), value, rel_tol=rel_tol):
                    return False
        return True

    def diagonal_expectation(self, trunc: int = None) -> float:
        """
        E f(Y, ..., Y) under the marginal, diagonal override respected
        """
        if self.diagonal_override is not None:
            return float(self.diagonal_override)
        if self.is_eigen and not self.eigen.summable_abs:
            return math.inf
        indices, values = self.coefficients(trunc)
        # term by term: each integrand is a single product of basis functions
        moments = [
            self.basis.marginal.expectation(
                lambda t, index=index: float(np.prod(self.basis.matrix(index, [t], check=False)))
            )
            for index in indices
        ]
        return float(pairwise_sum(values * np.asarray(moments, dtype=np.float64)))


def degeneracy_defect(
    spec: KernelSpec, slot: int, mc_size: int, seed: int, trunc: int = None
) -> DefectEstimate:
    """
    Monte Carlo estimate of E[(E_{X*_slot} f(X*_1, ..., X*_m))^2]; the inner expectation is
    taken by quadrature or exact summation over the marginal
    """
    if not 1 <= slot <= spec.order:
        raise IndexRangeError(f"slot must be in 1..{spec.order}, got {slot}")
    if mc_size < 1:
        raise ValueError("mc_size must be positive")
    marginal = spec.basis.marginal
    rng = stream(seed, 0, StreamComponent.outer)
    outer = marginal.sample(rng, mc_size * spec.order).reshape(mc_size, spec.order)

    def conditioned(t):
        points = outer.copy()
        points[:, slot - 1] = t
        return spec.evaluate_many(points, trunc, check=False)

    inner = np.asarray(marginal.expectation(conditioned), dtype=np.float64)
    squares = inner ** 2
    stderr = float(np.std(squares, ddof=1) / math.sqrt(mc_size)) if mc_size > 1 else 0.0
    return DefectEstimate(float(np.mean(squares)), stderr)
