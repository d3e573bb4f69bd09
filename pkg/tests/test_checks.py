import numpy as np

from uvstat.enums import BasisFamily
from uvstat.experiment.checks import (
    check_covariance,
    check_orthonormality,
    check_partition_oracle,
    compare_covariance,
    oracle_close,
    random_sparse_kernel,
)
from uvstat.limit.covariance import CovarianceModel


def test_orthonormality_checks():
    results = check_orthonormality(upto=10)
    assert [r.name for r in results] == ["orthonormality:sine_wiener", "orthonormality:discrete_signed"]
    assert all(r.passed for r in results)
    assert not all(r.passed for r in check_orthonormality(upto=10, continuous_tol=0.0, discrete_tol=0.0))


def test_covariance_check():
    analytic, mc = check_covariance(dim=3, mc_size=20_000, multiplier=6.0)
    assert analytic.passed
    assert mc.passed


def test_compare_covariance():
    analytic = CovarianceModel.identity(2, 1.5)
    stderr = np.full((2, 2), 0.01)
    close = CovarianceModel.from_matrix(1.5 * np.eye(2) + 0.01, stderr=stderr)
    far = CovarianceModel.from_matrix(1.5 * np.eye(2) + 0.1, stderr=stderr)
    assert compare_covariance(analytic, close, 1.5, 3.0).passed
    result = compare_covariance(analytic, far, 1.5, 3.0)
    assert result.analytic_exact and not result.within
    assert result.max_abs_z == np.max(result.z)
    assert not compare_covariance(analytic, close, 1.0, 3.0).passed


def test_random_sparse_kernel():
    kernel = random_sparse_kernel(BasisFamily.discrete_signed, 3, 0, 4)
    assert kernel == random_sparse_kernel(BasisFamily.discrete_signed, 3, 0, 4)
    assert kernel.order == 3
    assert all(1 <= i <= 6 for index, _ in kernel.coeffs for i in index)


def test_partition_oracle():
    results = check_partition_oracle(orders=(1, 2, 3), sizes=(5, 12), seeds=3)
    assert len(results) == 6
    assert all(r.passed for r in results), [r.detail for r in results]


def test_oracle_tolerance_is_relative_for_small_values():
    assert not oracle_close(1e-3, 1.1e-3)
    assert not oracle_close(0.0, 1e-9)
    assert oracle_close(1e-3, 1e-3 * (1 + 1e-12))
    assert oracle_close(1e6, 1e6 + 1e-5)
    assert not oracle_close(1e6, 1e6 + 1.0)
