import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional

import numpy as np
from scipy import linalg

from uvstat.basis import Basis
from uvstat.common import stream
from uvstat.enums import CovarianceMode, StreamComponent
from uvstat.exceptions import FactorizationError, IndexRangeError
from uvstat.process import BATCHES, Process

logger = logging.getLogger("uvstat.limit.covariance")

NEGATIVE_TOLERANCE = 1e-10
JITTERS = (0.0, 1e-12, 1e-10, 1e-8, 1e-6)


@dataclass(frozen=True, eq=False)
class CovarianceModel:
    """
    E tau_k tau_l for k, l = 1..dim; row/column k - 1 belongs to basis index k
    """

    dim: int
    matrix: np.ndarray = field(repr=False)
    raw: np.ndarray = field(repr=False)
    mode: CovarianceMode = CovarianceMode.analytic
    lag: int = 0
    stderr: Optional[np.ndarray] = field(default=None, repr=False)
    psd_repaired: bool = False
    repair_magnitude: float = 0.0
    factor: np.ndarray = field(default=None, repr=False, compare=False)

    @classmethod
    def from_matrix(
        cls,
        matrix,
        mode: CovarianceMode = CovarianceMode.analytic,
        lag: int = 0,
        stderr: np.ndarray = None,
    ) -> "CovarianceModel":
        raw = np.asarray(matrix, dtype=np.float64)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
            raise ValueError(f"covariance must be square, got shape {raw.shape}")
        symmetric = (raw + raw.T) / 2.0
        repaired, magnitude = repair_psd(symmetric)
        return cls(
            dim=raw.shape[0],
            matrix=repaired,
            raw=raw,
            mode=CovarianceMode(mode),
            lag=lag,
            stderr=stderr,
            psd_repaired=magnitude > 0,
            repair_magnitude=magnitude,
            factor=factorize(repaired),
        )

    @classmethod
    def identity(cls, dim: int, scale: float = 1.0) -> "CovarianceModel":
        return cls.from_matrix(scale * np.eye(dim))

    @property
    def variances(self) -> np.ndarray:
        return np.diag(self.matrix).copy()

    def quadratic_form(self, weights) -> float:
        """
        Var(sum_k w_k tau_k) = w' Sigma w
        """
        weights = np.asarray(weights, dtype=np.float64)
        return float(weights @ self.matrix[: weights.size, : weights.size] @ weights)

    def rows(self) -> List[List[float]]:
        return self.matrix.tolist()

    def to_csv(self, path: str, header_comment: str = None):
        """
        dim header line followed by the dense rows
        """
        with open(path, "w") as f:
            if header_comment:
                f.write(f"# {header_comment}\n")
            f.write(f"dim,{self.dim}\n")
            for row in self.matrix:
                f.write(",".join(repr(float(v)) for v in row) + "\n")

    @classmethod
    def from_csv(cls, path: str) -> "CovarianceModel":
        with open(path) as f:
            lines = [line.strip() for line in f if line.strip() and not line.startswith("#")]
        dim = int(lines[0].split(",")[1])
        matrix = np.asarray([[float(v) for v in line.split(",")] for line in lines[1 : dim + 1]])
        return cls.from_matrix(matrix)


def repair_psd(matrix: np.ndarray):
    """
    clip negative eigenvalues to zero; returns the repaired matrix and max |change|
    """
    eigenvalues, vectors = linalg.eigh(matrix)
    lowest = float(eigenvalues.min()) if eigenvalues.size else 0.0
    if lowest >= 0:
        return matrix, 0.0
    if lowest < -NEGATIVE_TOLERANCE:
        logger.warning(f"covariance has eigenvalue {lowest:.3e}, clipping to 0")
    repaired = (vectors * np.clip(eigenvalues, 0.0, None)) @ vectors.T
    repaired = (repaired + repaired.T) / 2.0
    return repaired, float(np.max(np.abs(repaired - matrix)))


def factorize(matrix: np.ndarray) -> np.ndarray:
    """
    lower Cholesky factor, with growing diagonal jitter for singular matrices
    """
    scale = max(1.0, float(np.max(np.abs(np.diag(matrix))))) if matrix.size else 1.0
    for jitter in JITTERS:
        try:
            return linalg.cholesky(matrix + jitter * scale * np.eye(matrix.shape[0]), lower=True)
        except linalg.LinAlgError:
            logger.debug(f"cholesky failed with jitter {jitter:.0e}")
    raise FactorizationError(f"covariance of dim {matrix.shape[0]} cannot be factored after repair")


def _lag_matrices(rows: np.ndarray, lag: int, length: int) -> np.ndarray:
    """
    M_j[k, l] = mean_t e_k(X_t) e_l(X_{t+j}) for j = 0..lag over the first length positions
    """
    head = rows[:, :length]
    return np.stack([head @ rows[:, j : j + length].T / length for j in range(lag + 1)])


def _combine(moments: np.ndarray) -> np.ndarray:
    total = moments[0].copy()
    for moment in moments[1:]:
        total += moment + moment.T
    return total


def build_covariance(
    process: Process,
    basis: Basis,
    dim: int,
    lag: int = None,
    mode: CovarianceMode = CovarianceMode.analytic,
    mc_size: int = 100_000,
    seed: int = 0,
) -> CovarianceModel:
    """
    Sigma_kl = E e_k e_l (X_1) + sum_{j=1..lag} [E e_k(X_1) e_l(X_{1+j}) + E e_l(X_1) e_k(X_{1+j})],
    lag defaulting to the dependence range of the process
    """
    if dim > basis.max_index:
        raise IndexRangeError(f"covariance dim {dim} exceeds basis max_index {basis.max_index}")
    if dim < 1:
        raise ValueError(f"covariance dim must be positive, got {dim}")
    mode = CovarianceMode(mode)
    if lag is None:
        lag = process.mixing_profile().dependence_range
    ks = np.arange(1, dim + 1)

    if mode == CovarianceMode.analytic:
        moments = np.empty((lag + 1, dim, dim))
        for j in range(lag + 1):
            for a, k in enumerate(ks):
                for b, l in enumerate(ks):
                    value = process.analytic_lag_moment(int(k), int(l), j)
                    if value is None:
                        raise ValueError(f"{process!r} has no analytic lag moment, use mode=mc")
                    moments[j, a, b] = value
        model = CovarianceModel.from_matrix(_combine(moments), mode=mode, lag=lag)
    else:
        size = mc_size // BATCHES
        if size < 1:
            raise ValueError(f"mc_size must be at least {BATCHES}, got {mc_size}")
        path = process.sample_path(size * BATCHES + lag, seed, 0, StreamComponent.covariance)
        rows = basis.matrix(ks, path)
        batches = np.stack(
            [
                _combine(_lag_matrices(rows[:, b * size : (b + 1) * size + lag], lag, size))
                for b in range(BATCHES)
            ]
        )
        stderr = np.std(batches, axis=0, ddof=1) / math.sqrt(BATCHES)
        model = CovarianceModel.from_matrix(batches.mean(axis=0), mode=mode, lag=lag, stderr=stderr)

    if model.psd_repaired:
        logger.warning(f"covariance repaired, magnitude {model.repair_magnitude:.3e}")
    logger.debug(f"covariance dim={dim} lag={lag} mode={mode.value} built")
    return model


def sample_tau(model: CovarianceModel, seed: int, replicate_id: int) -> np.ndarray:
    """
    centered Gaussian vector (tau_1..tau_dim) with covariance model.matrix
    """
    rng = stream(seed, replicate_id, StreamComponent.tau, model.dim)
    return model.factor @ rng.standard_normal(model.dim)


def sample_tau_many(model: CovarianceModel, seed: int, replicate_ids: Iterable[int]) -> np.ndarray:
    return np.stack([sample_tau(model, seed, rid) for rid in replicate_ids])
