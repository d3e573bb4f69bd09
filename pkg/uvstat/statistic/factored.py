"""
Statistics through power sums of basis functions instead of index tuples.

For a coefficient tensor f the U-statistic is

    U_n = sum_i f_i sum_P w(P) prod_{B in P} n^(-|B|/2) sum_j prod_{l in B} e_{i_l}(X_j),

which costs O(#coeffs * Bell(m) * n). A diagonal override only changes the value on tuples whose
points all coincide, so it enters as a correction counted over tied path values.
"""
import logging
import math
from typing import NamedTuple, Tuple

import numpy as np

from uvstat.common import pairwise_sum
from uvstat.exceptions import AsymmetricKernelError
from uvstat.kernel import KernelSpec
from uvstat.statistic.partitions import enumerate_partitions
from uvstat.statistic.power_sums import PowerSumTable

logger = logging.getLogger("uvstat.statistic.factored")


class LagOneSplit(NamedTuple):
    """
    U_n = diagonal + remainder for an order-2 kernel, where diagonal is
    n^-1 sum_{i<n} [f(X_i, X_{i+1}) + f(X_{i+1}, X_i)] and remainder runs over |i - j| >= 2
    """

    diagonal: float
    remainder: float

    @property
    def total(self) -> float:
        return self.diagonal + self.remainder


def _check_path(kernel: KernelSpec, path) -> np.ndarray:
    path = np.asarray(path, dtype=np.float64).ravel()
    kernel.basis.marginal.check_support(path)
    return path


def _power_sums(
    kernel: KernelSpec, path: np.ndarray, trunc: int
) -> Tuple[PowerSumTable, np.ndarray, np.ndarray]:
    indices, values = kernel.coefficients(trunc)
    upto = int(indices.max()) if indices.size else 0
    return PowerSumTable(kernel.basis, path, upto), indices, values


def _override_gap(kernel: KernelSpec, points: np.ndarray, trunc: int) -> np.ndarray:
    """
    override minus the plain series at the full-diagonal points (t, ..., t)
    """
    diagonal = np.repeat(np.asarray(points, dtype=np.float64)[:, None], kernel.order, axis=1)
    series = kernel.evaluate_many(diagonal, trunc, check=False, apply_override=False)
    return kernel.diagonal_override - series


def _tie_correction(kernel: KernelSpec, path: np.ndarray, trunc: int, distinct: bool) -> float:
    m = kernel.order
    uniq, counts = np.unique(path, return_counts=True)
    if distinct:
        # ordered tuples of pairwise distinct indices sharing one value: falling factorial
        keep = counts >= m
        uniq, counts = uniq[keep], counts[keep].astype(np.float64)
        multiplicity = np.prod([counts - r for r in range(m)], axis=0)
    else:
        multiplicity = counts.astype(np.float64) ** m
    if uniq.size == 0:
        return 0.0
    gap = _override_gap(kernel, uniq, trunc)
    return float(pairwise_sum(multiplicity * gap)) * float(path.size) ** (-m / 2.0)


def _distinct_series(kernel: KernelSpec, table: PowerSumTable, indices, values) -> float:
    partitions = enumerate_partitions(kernel.order)
    if kernel.is_eigen:
        ks = indices[:, 0]
        powers = table.powers(ks, kernel.order)
        terms = np.zeros(ks.size)
        for term in partitions:
            product = np.full(ks.size, float(term.weight))
            for size in term.block_sizes:
                product *= powers[size - 1]
            terms += product
        return float(pairwise_sum(values * terms))
    terms = np.zeros(values.size)
    for term in partitions:
        product = np.full(values.size, float(term.weight))
        for block in term.blocks:
            product *= table.block_sums(indices, block)
        terms += product
    return float(pairwise_sum(values * terms))


def u_stat_factored(kernel: KernelSpec, path, trunc: int = None) -> float:
    trunc = kernel.check_trunc(trunc)
    path = _check_path(kernel, path)
    if path.size < kernel.order:
        return 0.0
    if kernel.diagonal_override is not None and kernel.order == 2:
        return lag_one_decomposition(kernel, path, trunc).total
    table, indices, values = _power_sums(kernel, path, trunc)
    value = _distinct_series(kernel, table, indices, values)
    if kernel.diagonal_override is not None:
        value += _tie_correction(kernel, path, trunc, distinct=True)
    logger.debug(f"U n={path.size} m={kernel.order} power sums={len(table)}")
    return value


def v_stat_factored(kernel: KernelSpec, path, trunc: int = None) -> float:
    """
    sum_i f_i prod_l n^(-1/2) sum_j e_{i_l}(X_j); an empty path is an empty sum, 0
    """
    trunc = kernel.check_trunc(trunc)
    path = _check_path(kernel, path)
    if path.size == 0:
        return 0.0
    table, indices, values = _power_sums(kernel, path, trunc)
    if kernel.is_eigen:
        sums = table.powers(indices[:, 0], 1)[0]
        value = float(pairwise_sum(values * sums ** kernel.order))
    else:
        product = values.copy()
        for slot in range(kernel.order):
            product *= table.block_sums(indices, (slot,))
        value = float(pairwise_sum(product))
    if kernel.diagonal_override is not None:
        value += _tie_correction(kernel, path, trunc, distinct=False)
    return value


def u0_stat_factored(
    kernel: KernelSpec, path, trunc: int = None, auto_symmetrize: bool = False
) -> float:
    """
    n^(-m/2) sum over i_1 < ... < i_m of f_0, i.e. U_n(f_0) / m! for symmetric f_0
    """
    if auto_symmetrize:
        kernel = kernel.symmetrize()
    elif not kernel.is_symmetric():
        raise AsymmetricKernelError("U0 needs a symmetric kernel, pass auto_symmetrize=True")
    return u_stat_factored(kernel, path, trunc) / math.factorial(kernel.order)


def lag_one_decomposition(kernel: KernelSpec, path, trunc: int = None) -> LagOneSplit:
    """
    split of an order-2 U-statistic into neighbouring pairs and pairs at distance >= 2;
    the remainder uses the series, corrected for far pairs that tie under an override
    """
    if kernel.order != 2:
        raise ValueError(f"lag-one decomposition needs an order-2 kernel, got {kernel.order}")
    trunc = kernel.check_trunc(trunc)
    path = _check_path(kernel, path)
    n = path.size
    if n < 2:
        return LagOneSplit(0.0, 0.0)

    pairs = np.stack([path[:-1], path[1:]], axis=1)
    both = np.concatenate([pairs, pairs[:, ::-1]])
    diagonal = float(pairwise_sum(kernel.evaluate_many(both, trunc, check=False))) / n

    table, indices, values = _power_sums(kernel, path, trunc)
    if kernel.is_eigen:
        ks = indices[:, 0]
        powers = table.powers(ks, 2)
        lagged = table.lagged(np.stack([ks, ks], axis=1)) / n
        terms = powers[0] ** 2 - powers[1] - 2.0 * lagged
    else:
        first = table.block_sums(indices, (0,))
        second = table.block_sums(indices, (1,))
        same = table.block_sums(indices, (0, 1))
        forward = table.lagged(indices) / n
        backward = table.lagged(indices[:, ::-1]) / n
        terms = first * second - same - forward - backward
    remainder = float(pairwise_sum(values * terms))

    if kernel.diagonal_override is not None:
        uniq, counts = np.unique(path, return_counts=True)
        tied = counts > 1
        far = 0.0
        if np.any(tied):
            gap = _override_gap(kernel, uniq[tied], trunc)
            far = float(pairwise_sum(counts[tied] * (counts[tied] - 1.0) * gap))
            adjacent = path[:-1][path[:-1] == path[1:]]
            if adjacent.size:
                far -= 2.0 * float(pairwise_sum(_override_gap(kernel, adjacent, trunc)))
        remainder += far / n
    return LagOneSplit(diagonal, remainder)
