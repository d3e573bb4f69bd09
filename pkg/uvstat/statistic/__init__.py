from uvstat.enums import StatisticKind
from uvstat.kernel import KernelSpec
from uvstat.statistic.factored import (
    LagOneSplit,
    lag_one_decomposition,
    u0_stat_factored,
    u_stat_factored,
    v_stat_factored,
)
from uvstat.statistic.naive import u0_stat_naive, u_stat_naive, v_stat_naive
from uvstat.statistic.partitions import PartitionTerm, bell_number, enumerate_partitions
from uvstat.statistic.power_sums import PowerSumTable

__all__ = [
    "LagOneSplit",
    "PartitionTerm",
    "PowerSumTable",
    "bell_number",
    "compute_statistic",
    "enumerate_partitions",
    "lag_one_decomposition",
    "u0_stat_factored",
    "u0_stat_naive",
    "u_stat_factored",
    "u_stat_naive",
    "v_stat_factored",
    "v_stat_naive",
]


def compute_statistic(kind: StatisticKind, kernel: KernelSpec, path, trunc: int = None) -> float:
    """
    factored evaluation by statistic kind; U0 symmetrizes the kernel, so U0 and U agree
    """
    kind = StatisticKind(kind)
    if kind == StatisticKind.u:
        return u_stat_factored(kernel, path, trunc)
    elif kind == StatisticKind.v:
        return v_stat_factored(kernel, path, trunc)
    elif kind == StatisticKind.u0:
        return u0_stat_factored(kernel, path, trunc, auto_symmetrize=True)
    raise NotImplementedError(f"Unsupported statistic {kind}")
