"""
Direct enumeration of index tuples; only meant as an oracle for the factored evaluators.
"""
import logging

import numpy as np

from uvstat.common import pairwise_sum
from uvstat.exceptions import AsymmetricKernelError, SizeGuardError
from uvstat.kernel import KernelSpec

logger = logging.getLogger("uvstat.statistic.naive")

MAX_TUPLES = 10 ** 8


def _guard(n: int, m: int):
    if n ** m > MAX_TUPLES:
        raise SizeGuardError(f"naive evaluation needs n^m <= {MAX_TUPLES:.0e}, got n={n}, m={m}")


def _tail_grid(n: int, width: int) -> np.ndarray:
    if width == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*([np.arange(n)] * width), indexing="ij")
    return np.stack(grids, axis=-1).reshape(-1, width)


def _distinct(tuples: np.ndarray) -> np.ndarray:
    keep = np.ones(tuples.shape[0], dtype=bool)
    for a in range(tuples.shape[1]):
        for b in range(a + 1, tuples.shape[1]):
            keep &= tuples[:, a] != tuples[:, b]
    return keep


def _increasing(tuples: np.ndarray) -> np.ndarray:
    return np.all(np.diff(tuples, axis=1) > 0, axis=1)


def _enumerate(kernel: KernelSpec, path, trunc, mask=None) -> float:
    path = np.asarray(path, dtype=np.float64)
    n, m = path.size, kernel.order
    if n == 0:
        return 0.0
    _guard(n, m)
    kernel.basis.marginal.check_support(path)
    tail = _tail_grid(n, m - 1)
    totals = np.zeros(n)
    # one chunk per first index keeps the summation order fixed
    for first in range(n):
        tuples = np.concatenate([np.full((tail.shape[0], 1), first), tail], axis=1)
        if mask is not None:
            tuples = tuples[mask(tuples)]
        if tuples.shape[0]:
            values = kernel.evaluate_many(path[tuples], trunc, check=False)
            totals[first] = pairwise_sum(values)
    return float(pairwise_sum(totals)) * float(n) ** (-m / 2.0)


def v_stat_naive(kernel: KernelSpec, path, trunc: int = None) -> float:
    """
    n^(-m/2) times the kernel summed over all m-tuples of path indices
    """
    return _enumerate(kernel, path, trunc)


def u_stat_naive(kernel: KernelSpec, path, trunc: int = None) -> float:
    if np.size(path) < kernel.order:
        return 0.0
    return _enumerate(kernel, path, trunc, mask=_distinct)


def u0_stat_naive(
    kernel: KernelSpec, path, trunc: int = None, auto_symmetrize: bool = False
) -> float:
    """
    n^(-m/2) sum over i_1 < ... < i_m of f_0; with auto_symmetrize the kernel is taken as f and
    f_0 = symmetrize(f), otherwise the kernel must already be symmetric and is used as f_0
    """
    if auto_symmetrize:
        kernel = kernel.symmetrize()
    elif not kernel.is_symmetric():
        raise AsymmetricKernelError("U0 needs a symmetric kernel, pass auto_symmetrize=True")
    if np.size(path) < kernel.order:
        return 0.0
    return _enumerate(kernel, path, trunc, mask=_increasing)
