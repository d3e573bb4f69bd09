"""
Self-checks behind ``uvstat check``: basis orthonormality, covariance constants of the shift
sequence and agreement of the factored statistics with direct enumeration.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from uvstat import factory
from uvstat.common import stream
from uvstat.enums import BasisFamily, CovarianceMode, MarginalLawId, ProcessId, StreamComponent
from uvstat.kernel import KernelSpec
from uvstat.limit.covariance import CovarianceModel, build_covariance
from uvstat.statistic import u_stat_factored, u_stat_naive, v_stat_factored, v_stat_naive

logger = logging.getLogger("uvstat.experiment.checks")

ORACLE_RTOL = 1e-10
ORACLE_ATOL = 1e-12
ORACLE_COEFFS = 6
ORACLE_UPTO = 6


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class CovarianceComparison:
    analytic_exact: bool
    max_abs_z: float
    within: bool
    z: np.ndarray

    @property
    def passed(self) -> bool:
        return self.analytic_exact and self.within


def compare_covariance(
    analytic: CovarianceModel, mc: CovarianceModel, expected_variance: float, multiplier: float
) -> CovarianceComparison:
    """
    analytic against expected_variance * I exactly; every Monte Carlo entry within
    multiplier standard errors of the analytic one
    """
    exact = bool(np.array_equal(analytic.matrix, expected_variance * np.eye(analytic.dim)))
    diff = mc.raw - analytic.matrix
    stderr = mc.stderr if mc.stderr is not None else np.zeros_like(diff)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(stderr > 0, np.abs(diff) / stderr, np.where(diff == 0, 0.0, np.inf))
    worst = float(np.max(z)) if z.size else 0.0
    return CovarianceComparison(exact, worst, worst <= multiplier, z)


def check_orthonormality(
    upto: int = 20, continuous_tol: float = 1e-6, discrete_tol: float = 1e-9
) -> List[CheckResult]:
    tolerances = {BasisFamily.sine_wiener: continuous_tol, BasisFamily.discrete_signed: discrete_tol}
    ret = []
    for family, tol in tolerances.items():
        report = factory.get_basis(family).check_orthonormal(upto, tol)
        ret.append(
            CheckResult(
                f"orthonormality:{family.value}",
                report.passed,
                f"max|G-I|={report.max_deviation:.3e} tol={tol:.0e} upto={upto}",
            )
        )
    return ret


def check_covariance(
    dim: int = 5, mc_size: int = 100_000, seed: int = 20240605, multiplier: float = 3.0
) -> List[CheckResult]:
    process = factory.get_process(ProcessId.one_dependent_shift, MarginalLawId.uniform_symmetric)
    basis = factory.get_basis(BasisFamily.sine_wiener)
    analytic = build_covariance(process, basis, dim)
    mc = build_covariance(process, basis, dim, mode=CovarianceMode.mc, mc_size=mc_size, seed=seed)
    comparison = compare_covariance(analytic, mc, 1.5, multiplier)
    return [
        CheckResult("covariance:analytic", comparison.analytic_exact, f"analytic == 3/2 I (dim {dim})"),
        CheckResult(
            "covariance:mc",
            comparison.within,
            f"max |mc - analytic| / stderr = {comparison.max_abs_z:.2f} <= {multiplier}",
        ),
    ]


def random_sparse_kernel(family: BasisFamily, order: int, seed: int, replicate_id: int) -> KernelSpec:
    """
    a handful of random coefficients on indices 1..6, not symmetric in general
    """
    rng = stream(seed, replicate_id, StreamComponent.outer, order)
    indices = rng.integers(1, ORACLE_UPTO + 1, size=(ORACLE_COEFFS, order))
    coeffs: Dict = {}
    for index, value in zip(indices.tolist(), rng.standard_normal(ORACLE_COEFFS)):
        coeffs[tuple(index)] = coeffs.get(tuple(index), 0.0) + float(value)
    return KernelSpec.from_coefficients(factory.get_basis(family), coeffs, order=order)


def oracle_close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=ORACLE_RTOL, abs_tol=ORACLE_ATOL)


def check_partition_oracle(
    orders: Sequence[int] = (1, 2, 3), sizes: Sequence[int] = (5, 12, 25, 40), seeds: int = 50
) -> List[CheckResult]:
    ret = []
    for family, marginal in (
        (BasisFamily.sine_wiener, MarginalLawId.uniform_symmetric),
        (BasisFamily.discrete_signed, MarginalLawId.signed_geometric),
    ):
        process = factory.get_process(ProcessId.iid, marginal)
        for m in orders:
            worst, failures = 0.0, 0
            for rid in range(seeds):
                kernel = random_sparse_kernel(family, m, 0, rid)
                for n in sizes:
                    path = process.sample_path(n, 0, rid)
                    for fast, slow in ((u_stat_factored, u_stat_naive), (v_stat_factored, v_stat_naive)):
                        a, b = fast(kernel, path), slow(kernel, path)
                        worst = max(worst, abs(a - b) / max(abs(b), ORACLE_ATOL / ORACLE_RTOL))
                        failures += not oracle_close(a, b)
            ret.append(
                CheckResult(
                    f"partition-oracle:{family.value}:m={m}",
                    failures == 0,
                    f"max relative gap {worst:.2e}, {failures} mismatches",
                )
            )
    return ret


def run_checks() -> List[CheckResult]:
    results = check_orthonormality() + check_covariance() + check_partition_oracle()
    for result in results:
        if result.passed:
            logger.info(f"check {result.name} passed: {result.detail}")
        else:
            logger.warning(f"check {result.name} failed: {result.detail}")
    return results
