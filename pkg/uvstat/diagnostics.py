import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy import stats

from uvstat.common import stream
from uvstat.enums import StatisticKind, StreamComponent
from uvstat.exceptions import EmptySampleError

logger = logging.getLogger("uvstat.diagnostics")

KS_ALPHA_05 = 1.3581


@dataclass(frozen=True)
class Provenance:
    source: str
    seed: int
    n: Optional[int] = None
    statistic: Optional[StatisticKind] = None
    config_hash: str = ""


@dataclass(frozen=True, eq=False)
class SampleSet:
    """
    replicate values in replicate-id order with what produced them
    """

    values: np.ndarray = field(repr=False)
    provenance: Provenance

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64).ravel())

    def __len__(self):
        return self.values.size

    @property
    def replicates(self) -> int:
        return self.values.size


def _values(sample) -> np.ndarray:
    values = sample.values if isinstance(sample, SampleSet) else np.asarray(sample, dtype=np.float64)
    values = np.ravel(values)
    if values.size == 0:
        raise EmptySampleError("distance between samples needs nonempty inputs")
    return values


def ecdf(sample, thresholds) -> np.ndarray:
    """
    right-continuous empirical CDF: fraction of values <= threshold
    """
    values = np.sort(_values(sample))
    return np.searchsorted(values, np.asarray(thresholds, dtype=np.float64), side="right") / values.size


def ks_two_sample(a, b) -> float:
    """
    sup |F_a - F_b| between the two empirical CDFs
    """
    return float(stats.ks_2samp(_values(a), _values(b), method="asymp").statistic)


def ks_critical(size_a: int, size_b: int, coefficient: float = KS_ALPHA_05) -> float:
    return coefficient * math.sqrt((size_a + size_b) / (size_a * size_b))


def wasserstein1(a, b, seed: int = 0) -> float:
    """
    mean |a_(i) - b_(i)| of the sorted samples; the larger sample is subsampled without
    replacement to the smaller size with a seeded stream
    """
    x, y = _values(a), _values(b)
    if x.size != y.size:
        rng = stream(seed, 0, StreamComponent.subsample, max(x.size, y.size))
        if x.size > y.size:
            x = rng.choice(x, size=y.size, replace=False)
        else:
            y = rng.choice(y, size=x.size, replace=False)
    return float(np.mean(np.abs(np.sort(x) - np.sort(y))))


@dataclass(frozen=True)
class DistanceRow:
    n: int
    replicates: int
    limit: str
    ks: float
    w1: float
    passed: Optional[bool] = None


def is_decreasing(values: Sequence[float], inversions: int = 1) -> bool:
    """
    non-increasing trend, tolerating a given number of upward steps
    """
    ups = sum(1 for a, b in zip(values, values[1:]) if b > a)
    return ups <= inversions


def convergence_table(
    statistic_samples: Dict[int, SampleSet], limit: SampleSet, label: str = None, seed: int = 0
) -> List[DistanceRow]:
    """
    KS and W1 of each n's statistic sample against one common limit sample, ascending n
    """
    label = label or limit.provenance.source
    rows = []
    for n in sorted(statistic_samples):
        sample = statistic_samples[n]
        rows.append(
            DistanceRow(
                n=n,
                replicates=len(sample),
                limit=label,
                ks=ks_two_sample(sample, limit),
                w1=wasserstein1(sample, limit, seed),
            )
        )
        logger.debug(f"{label} n={n} ks={rows[-1].ks:.4f} w1={rows[-1].w1:.4f}")
    return rows


def ks_trend(rows: Sequence[DistanceRow], inversions: int = 1) -> bool:
    return is_decreasing([row.ks for row in sorted(rows, key=lambda r: r.n)], inversions)
