import contextlib
import dataclasses
import logging
import multiprocessing
import os
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from uvstat import factory
from uvstat.common import config_hash
from uvstat.diagnostics import (
    DistanceRow,
    Provenance,
    SampleSet,
    convergence_table,
    ks_trend,
    ks_two_sample,
    wasserstein1,
)
from uvstat.enums import (
    BasisFamily,
    CovarianceMode,
    ExitCode,
    LimitLaw,
    ScenarioKind,
    StatisticKind,
)
from uvstat.exceptions import ConfigError
from uvstat.experiment import artifacts
from uvstat.experiment.checks import check_orthonormality, compare_covariance
from uvstat.kernel import KernelSpec
from uvstat.limit.covariance import build_covariance, sample_tau_many
from uvstat.limit.divergence import (
    check_divergence_preconditions,
    divergence_table,
    is_strictly_increasing,
)
from uvstat.limit.sampler import limit_samples, remainder_samples, truncation_bound
from uvstat.process import Process
from uvstat.settings import ExperimentConfig
from uvstat.statistic import compute_statistic

logger = logging.getLogger("uvstat.experiment.runner")


@dataclass
class ScenarioResult:
    name: str
    kind: ScenarioKind
    config_hash: str
    seed: int
    passed: bool = True
    rows: List[Dict] = field(default_factory=list)
    details: Dict = field(default_factory=dict)
    distances: List[DistanceRow] = field(default_factory=list)
    samples: List[Tuple[str, Optional[int], np.ndarray]] = field(default_factory=list)
    curves: Dict[str, np.ndarray] = field(default_factory=dict)
    matrices: Dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def exit_code(self) -> ExitCode:
        return ExitCode.passed if self.passed else ExitCode.acceptance_failed

    def summary(self) -> Dict:
        return {
            "scenario": self.name,
            "kind": self.kind,
            "config_hash": self.config_hash,
            "seed": self.seed,
            "passed": self.passed,
            "exit_code": int(self.exit_code),
            "rows": self.rows,
            "details": self.details,
        }


@contextlib.contextmanager
def make_mapper(workers: int = 1):
    """
    order-preserving map, inline for a single worker
    """
    if workers <= 1:
        yield lambda func, tasks: list(map(func, tasks))
    else:
        with multiprocessing.Pool(processes=workers) as pool:
            yield pool.map


def statistic_replicate(task: Tuple[Process, KernelSpec, StatisticKind, int, int, int, int]) -> float:
    process, kernel, kind, n, seed, replicate_id, trunc = task
    path = process.sample_path(n, seed, replicate_id)
    return compute_statistic(kind, kernel, path, trunc)


def statistic_samples(
    process: Process,
    kernel: KernelSpec,
    kind: StatisticKind,
    n: int,
    replicates: int,
    seed: int,
    trunc: int,
    mapper: Callable = None,
) -> np.ndarray:
    mapper = mapper or (lambda func, tasks: list(map(func, tasks)))
    tasks = [(process, kernel, kind, n, seed, rid, trunc) for rid in range(replicates)]
    return np.asarray(mapper(statistic_replicate, tasks), dtype=np.float64)


def _components(config: ExperimentConfig) -> Tuple[Process, KernelSpec, int]:
    kernel = factory.build_kernel(config.kernel)
    process = factory.get_process(config.process.process_id, config.kernel.marginal)
    return process, kernel, kernel.check_trunc(config.kernel.truncation)


def _law_threshold(config: ExperimentConfig, law: LimitLaw) -> Dict:
    bounds = config.thresholds.get(law.value) or {}
    unknown = set(bounds) - {"ks_max", "ks_min"}
    if unknown:
        raise ConfigError(f"unknown key {sorted(unknown)[0]!r} in thresholds.{law.value}")
    return bounds


def _meets(ks: float, bounds: Dict) -> bool:
    if "ks_max" in bounds and ks > bounds["ks_max"]:
        return False
    if "ks_min" in bounds and ks < bounds["ks_min"]:
        return False
    return True


def run_convergence(config: ExperimentConfig, result: ScenarioResult, mapper: Callable):
    if not config.limits:
        raise ConfigError(f"scenario {config.name!r} needs at least one limit law")
    process, kernel, trunc = _components(config)
    model = build_covariance(
        process,
        kernel.basis,
        trunc,
        lag=config.lag,
        mode=config.covariance_mode,
        mc_size=config.mc_size,
        seed=config.seed,
    )
    if model.psd_repaired:
        logger.warning(f"{config.name}: covariance repaired by {model.repair_magnitude:.3e}")

    stats: Dict[int, SampleSet] = {}
    for n in config.n_grid:
        values = statistic_samples(
            process, kernel, config.statistic, n, config.replicates, config.seed, trunc, mapper
        )
        stats[n] = SampleSet(
            values, Provenance("statistic", config.seed, n, config.statistic, result.config_hash)
        )
        result.samples.append(("statistic", n, values))
        logger.info(f"{config.name}: {config.replicates} replicates of {config.statistic.value} at n={n}")

    largest = max(config.n_grid)
    result.curves[f"{config.statistic.value} n={largest}"] = stats[largest].values
    replicate_ids = range(config.limit_sample_size)
    trends = {}
    for law in config.limits:
        bounds = _law_threshold(config, law)
        values = limit_samples(law, kernel, model, config.seed, replicate_ids, trunc)
        limit = SampleSet(values, Provenance(f"limit:{law.value}", config.seed, config_hash=result.config_hash))
        result.samples.append((f"limit:{law.value}", None, values))
        result.curves[law.value] = values
        for row in convergence_table(stats, limit, law.value, config.seed):
            passed = _meets(row.ks, bounds) if row.n == largest else None
            result.distances.append(DistanceRow(row.n, row.replicates, row.limit, row.ks, row.w1, passed))
            if passed is False:
                result.passed = False
                logger.warning(f"{config.name}: KS {row.ks:.4f} vs {law.value} misses {bounds}")
        trends[law.value] = ks_trend([r for r in result.distances if r.limit == law.value])

    if config.thresholds.get("require_decreasing"):
        for law, decreasing in trends.items():
            if not decreasing:
                result.passed = False
                logger.warning(f"{config.name}: KS against {law} does not decrease in n")
    result.details["ks_decreasing"] = trends
    result.details["covariance_repair"] = model.repair_magnitude
    if not (kernel.is_eigen and not kernel.eigen.summable_abs):
        tau = sample_tau_many(model, config.seed, replicate_ids)
        result.details["truncation_bound"] = truncation_bound(kernel, tau, trunc)
    result.rows = [
        {"n": r.n, "R": r.replicates, "limit": r.limit, "ks": r.ks, "w1": r.w1, "pass": r.passed}
        for r in result.distances
    ]


def run_divergence(config: ExperimentConfig, result: ScenarioResult, mapper: Callable):
    if len(config.n_grid) < 2:
        raise ConfigError(f"scenario {config.name!r} needs at least two sample sizes")
    first, second = config.thresholds.get("remainder_ks_between") or sorted(config.n_grid)[-2:]
    if first not in config.n_grid or second not in config.n_grid:
        raise ConfigError(f"remainder_ks_between {first}, {second} must lie on the n grid")
    process, kernel, trunc = _components(config)
    try:
        check_divergence_preconditions(kernel, process)
    except ValueError as e:
        raise ConfigError(f"scenario {config.name!r}: {e}")
    rows, records = divergence_table(
        config.n_grid, kernel, process, config.replicates, config.seed, trunc, mapper
    )
    remainders = {}
    for n, batch in records.items():
        columns = np.asarray(batch, dtype=np.float64)
        remainders[n] = columns[:, 2]
        result.samples.append(("statistic", n, columns[:, 0]))
        result.samples.append(("diagonal", n, columns[:, 1]))
        result.samples.append(("remainder", n, columns[:, 2]))

    diagonal = [row.diagonal_median for row in rows]
    growth = diagonal[-1] / diagonal[0] if diagonal[0] > 0 else float("nan")
    increasing = is_strictly_increasing(diagonal)
    min_growth = config.thresholds.get("min_growth", 1.0)
    grows = bool(growth >= min_growth)

    ks_max = config.thresholds.get("remainder_ks_max")
    between = ks_two_sample(remainders[first], remainders[second])
    stable = ks_max is None or between <= ks_max
    result.distances.append(
        DistanceRow(
            second,
            config.replicates,
            f"remainder n={first}",
            between,
            wasserstein1(remainders[first], remainders[second], config.seed),
            stable,
        )
    )

    model = build_covariance(process, kernel.basis, trunc, lag=config.lag)
    limit = remainder_samples(kernel, model, config.seed, range(config.limit_sample_size), trunc)
    result.samples.append(("limit:remainder", None, limit))
    for n in config.n_grid:
        result.distances.append(
            DistanceRow(
                n,
                config.replicates,
                "remainder_limit",
                ks_two_sample(remainders[n], limit),
                wasserstein1(remainders[n], limit, config.seed),
            )
        )
    result.curves = {f"remainder n={first}": remainders[first], f"remainder n={second}": remainders[second]}
    result.curves["remainder limit"] = limit

    result.passed = increasing and grows and stable
    if not result.passed:
        logger.warning(
            f"{config.name}: increasing={increasing} growth={growth:.3f} remainder KS={between:.4f}"
        )
    result.rows = [dataclasses.asdict(row) for row in rows]
    result.details.update(
        diagonal_increasing=increasing,
        growth_ratio=growth,
        min_growth=min_growth,
        remainder_ks=between,
        remainder_ks_between=[first, second],
        remainder_ks_max=ks_max,
    )


def run_covariance(config: ExperimentConfig, result: ScenarioResult, mapper: Callable):
    process, kernel, trunc = _components(config)
    analytic = build_covariance(process, kernel.basis, trunc, lag=config.lag)
    mc = build_covariance(
        process,
        kernel.basis,
        trunc,
        lag=config.lag,
        mode=CovarianceMode.mc,
        mc_size=config.mc_size,
        seed=config.seed,
    )
    expected = float(config.thresholds.get("expected_variance", 1.5))
    multiplier = float(config.thresholds.get("stderr_multiplier", 3.0))
    comparison = compare_covariance(analytic, mc, expected, multiplier)
    result.passed = comparison.passed
    result.matrices["covariance_analytic"] = analytic.matrix
    result.matrices["covariance_mc"] = mc.raw
    for a in range(trunc):
        for b in range(trunc):
            result.rows.append(
                {
                    "k": a + 1,
                    "l": b + 1,
                    "analytic": analytic.matrix[a, b],
                    "mc": mc.raw[a, b],
                    "stderr": mc.stderr[a, b],
                    "z": comparison.z[a, b],
                }
            )
    result.details.update(
        analytic_exact=comparison.analytic_exact,
        expected_variance=expected,
        max_abs_z=comparison.max_abs_z,
        stderr_multiplier=multiplier,
        mc_size=config.mc_size,
        psd_repair=mc.repair_magnitude,
    )
    if not result.passed:
        logger.warning(
            f"{config.name}: analytic exact={comparison.analytic_exact} max z={comparison.max_abs_z:.2f}"
        )


def run_orthonormality(config: ExperimentConfig, result: ScenarioResult, mapper: Callable):
    continuous_tol = float(config.thresholds.get("continuous_tol", 1e-6))
    discrete_tol = float(config.thresholds.get("discrete_tol", 1e-9))
    checks = check_orthonormality(config.upto, continuous_tol, discrete_tol)
    for family in BasisFamily:
        result.matrices[f"gram_{family.value}"] = factory.get_basis(family).gram_matrix(config.upto)
    result.rows = [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
    result.passed = all(c.passed for c in checks)


RUNNERS: Dict[ScenarioKind, Callable] = {
    ScenarioKind.convergence: run_convergence,
    ScenarioKind.divergence: run_divergence,
    ScenarioKind.covariance: run_covariance,
    ScenarioKind.orthonormality: run_orthonormality,
}


def write_artifacts(result: ScenarioResult, out: str) -> str:
    directory = artifacts.ensure_dir(os.path.join(out, result.name))
    digest = result.config_hash
    artifacts.write_samples(os.path.join(directory, "samples.csv"), digest, result.samples)
    artifacts.write_distances(os.path.join(directory, "distances.csv"), digest, result.distances)
    artifacts.write_summary(os.path.join(directory, "summary.json"), result.summary())
    artifacts.write_ecdf_svg(os.path.join(directory, "ecdf.svg"), result.curves, result.name, digest)
    for name, matrix in result.matrices.items():
        artifacts.write_matrix(os.path.join(directory, f"{name}.csv"), digest, matrix)
    return directory


def run_scenario(config: ExperimentConfig, workers: int = 1, out: str = None) -> ScenarioResult:
    """
    run one scenario; artifacts go to <out>/<scenario name> when an output directory is given
    """
    digest = config_hash(config.to_dict())
    result = ScenarioResult(config.name, config.kind, digest, config.seed)
    logger.info(f"start scenario {config.name} ({config.kind.value}), config_hash={digest[:12]}")
    with make_mapper(workers) as mapper:
        RUNNERS[config.kind](config, result, mapper)
    if out:
        directory = write_artifacts(result, out)
        logger.info(f"artifacts of {config.name} written to {directory}")
    logger.info(f"finish scenario {config.name}: {'pass' if result.passed else 'FAIL'}")
    return result
