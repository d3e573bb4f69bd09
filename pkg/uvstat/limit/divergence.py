"""
Growth of the neighbouring-pair term for eigenvalues that are square summable but not summable.

For the shift sequence X_i = Y_{i + xi_i} the term f(X_i, X_{i+1}) equals f(Y_{i+1}, Y_{i+1}) on the
event xi_i = 1, xi_{i+1} = 0. Its mean is a quarter of sum lambda_k, so with lambda_k = 1/k the
normalized sum of these coincidences grows without bound while the remaining pairs settle.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from uvstat.common import pairwise_sum
from uvstat.enums import ProcessId
from uvstat.kernel import KernelSpec
from uvstat.process import Process
from uvstat.statistic import lag_one_decomposition

logger = logging.getLogger("uvstat.limit.divergence")


class DivergenceRecord(NamedTuple):
    u: float
    diagonal: float
    remainder: float
    coincidence: float


@dataclass(frozen=True)
class DivergenceRow:
    n: int
    replicates: int
    u_median: float
    diagonal_median: float
    remainder_median: float
    coincidence_median: float


def check_divergence_preconditions(kernel: KernelSpec, process: Process):
    if not kernel.is_eigen or kernel.order != 2:
        raise ValueError("divergence table needs an order-2 eigen-series kernel")
    if kernel.eigen.summable_abs:
        raise ValueError(
            f"eigenvalues {kernel.eigen.formula.value} are summable, the diagonal term converges"
        )
    if process.process_id != ProcessId.one_dependent_shift:
        raise ValueError(f"divergence table needs the one-dependent shift, got {process.process_id.value}")


def divergence_replicate(task: Tuple[Process, KernelSpec, int, int, int, int]) -> DivergenceRecord:
    process, kernel, n, seed, replicate_id, trunc = task
    path, values, shifts = process.sample_path_with_shifts(n, seed, replicate_id)
    split = lag_one_decomposition(kernel, path, trunc)
    # nu_i = xi_i (1 - xi_{i+1}) f(Y_{i+1}, Y_{i+1}) for i < n
    hit = (shifts[:-1] == 1) & (shifts[1:] == 0)
    tied = values[1:n][hit]
    coincidence = 0.0
    if tied.size:
        at = kernel.evaluate_many(np.stack([tied, tied], axis=1), trunc, check=False)
        coincidence = 2.0 * float(pairwise_sum(at)) / n
    return DivergenceRecord(split.total, split.diagonal, split.remainder, coincidence)


def divergence_records(
    process: Process,
    kernel: KernelSpec,
    n: int,
    replicates: int,
    seed: int,
    trunc: int = None,
    mapper: Callable = map,
) -> List[DivergenceRecord]:
    tasks = [(process, kernel, n, seed, rid, trunc) for rid in range(replicates)]
    return list(mapper(divergence_replicate, tasks))


def divergence_table(
    n_grid: Sequence[int],
    kernel: KernelSpec,
    process: Process,
    replicates: int,
    seed: int,
    trunc: int = None,
    mapper: Callable = map,
) -> Tuple[List[DivergenceRow], Dict[int, List[DivergenceRecord]]]:
    """
    medians over replicates of U_n and its parts for every n of the grid
    """
    check_divergence_preconditions(kernel, process)
    rows, records = [], {}
    for n in n_grid:
        batch = divergence_records(process, kernel, n, replicates, seed, trunc, mapper)
        records[n] = batch
        columns = np.asarray(batch, dtype=np.float64)
        medians = np.median(columns, axis=0)
        rows.append(
            DivergenceRow(
                n=n,
                replicates=replicates,
                u_median=float(medians[0]),
                diagonal_median=float(medians[1]),
                remainder_median=float(medians[2]),
                coincidence_median=float(medians[3]),
            )
        )
        logger.info(f"divergence n={n} diagonal median={medians[1]:.4f} U median={medians[0]:.4f}")
    return rows, records


def is_strictly_increasing(values: Sequence[float]) -> bool:
    return all(b > a for a, b in zip(values, values[1:]))
