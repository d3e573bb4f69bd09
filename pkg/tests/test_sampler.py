import numpy as np
import pytest

from uvstat.enums import LimitLaw
from uvstat.exceptions import IndexRangeError, NonSummableError
from uvstat.kernel import EigenSeries, KernelSpec
from uvstat.limit.covariance import CovarianceModel, sample_tau_many
from uvstat.limit.sampler import (
    claimed_limit_sample,
    diagonal_offset,
    limit_samples,
    limit_u_sample,
    limit_v_sample,
    prop2_limit_sample,
    remainder_limit_sample,
    truncation_bound,
    v_limit_variance,
)


@pytest.fixture(scope="module")
def identity50():
    return CovarianceModel.identity(50)


def test_u_limit_equals_claimed_under_identity(wiener_kernel, identity50):
    for rid in range(1000):
        u = limit_u_sample(wiener_kernel, identity50, 5, rid)
        claimed = claimed_limit_sample(wiener_kernel, identity50, 5, rid)
        assert u == pytest.approx(claimed, rel=1e-12, abs=1e-12)


def test_v_limit_is_u_limit_plus_trace(wiener_kernel, identity50):
    trace = float(np.sum(EigenSeries.wiener().lambdas(50)))
    for rid in range(20):
        v = limit_v_sample(wiener_kernel, identity50, 5, rid)
        u = limit_u_sample(wiener_kernel, identity50, 5, rid)
        assert v == pytest.approx(u + trace, rel=1e-10)


def test_prop2_is_offset_plus_remainder(sine_basis):
    kernel = KernelSpec.from_eigen_series(sine_basis, EigenSeries.wiener(), diagonal_override=2.0)
    model = CovarianceModel.identity(30, 1.5)
    assert diagonal_offset(kernel) == 1.0
    for rid in range(10):
        total = prop2_limit_sample(kernel, model, 9, rid)
        remainder = remainder_limit_sample(kernel, model, 9, rid)
        assert total == pytest.approx(1.0 + remainder, rel=1e-12)


def test_remainder_centered_by_covariance(wiener_kernel):
    model = CovarianceModel.identity(30, 1.5)
    values = limit_samples(LimitLaw.claimed, wiener_kernel, model, 4, range(2000))
    remainder = np.asarray([remainder_limit_sample(wiener_kernel, model, 4, rid) for rid in range(2000)])
    # Sigma - I = I / 2 on the diagonal
    shift = 0.5 * float(np.sum(EigenSeries.wiener().lambdas(30)))
    np.testing.assert_allclose(values, remainder + shift, rtol=1e-10, atol=1e-12)


def test_guards(sine_basis, identity50):
    harmonic = KernelSpec.from_eigen_series(sine_basis, EigenSeries.one_over_k())
    with pytest.raises(NonSummableError):
        limit_u_sample(harmonic, identity50, 1, 0)
    with pytest.raises(NonSummableError):
        claimed_limit_sample(harmonic, identity50, 1, 0)
    # square summable is enough for the remainder
    assert np.isfinite(remainder_limit_sample(harmonic, identity50, 1, 0))
    with pytest.raises(IndexRangeError):
        limit_u_sample(
            KernelSpec.from_eigen_series(sine_basis, EigenSeries.wiener()), CovarianceModel.identity(5), 1, 0, 10
        )
    cubic = KernelSpec.from_eigen_series(sine_basis, EigenSeries.wiener(), order=3)
    with pytest.raises(ValueError):
        claimed_limit_sample(cubic, identity50, 1, 0)


def test_v_limit_variance(sine_basis):
    kernel = KernelSpec.from_coefficients(sine_basis, {(1,): 2.0, (2,): 1.0})
    model = CovarianceModel.from_matrix([[1.5, 0.2], [0.2, 1.5]])
    assert v_limit_variance(kernel, model) == pytest.approx(8.3)
    draws = limit_samples(LimitLaw.theorem2_v, kernel, model, 2, range(20_000))
    assert np.var(draws) == pytest.approx(8.3, rel=0.05)
    with pytest.raises(ValueError):
        v_limit_variance(KernelSpec.from_eigen_series(sine_basis, EigenSeries.wiener()), model)


def test_laws_share_tau(wiener_kernel, identity50):
    ids = range(50)
    u = limit_samples(LimitLaw.theorem1_u, wiener_kernel, identity50, 3, ids)
    claimed = limit_samples(LimitLaw.claimed, wiener_kernel, identity50, 3, ids)
    np.testing.assert_allclose(u, claimed, rtol=1e-12, atol=1e-12)
    assert not np.array_equal(u, limit_samples(LimitLaw.theorem1_u, wiener_kernel, identity50, 4, ids))


def test_truncation_bound(sine_basis, identity50):
    tau = sample_tau_many(identity50, 1, range(200))
    finite = KernelSpec.from_eigen_series(sine_basis, EigenSeries.explicit([0.5, 0.25]))
    assert truncation_bound(finite, tau, 2) == 0.0
    wiener = KernelSpec.from_eigen_series(sine_basis, EigenSeries.wiener())
    bound = truncation_bound(wiener, tau, 20)
    assert 0 < bound < truncation_bound(wiener, tau, 10)


def test_truncation_error_within_bound(wiener_kernel):
    model = CovarianceModel.identity(200)
    ids = range(300)
    short = np.asarray([limit_u_sample(wiener_kernel, model, 8, rid, 20) for rid in ids])
    full = np.asarray([limit_u_sample(wiener_kernel, model, 8, rid, 200) for rid in ids])
    tau = sample_tau_many(model, 8, ids)
    assert 0 < np.mean(np.abs(full - short)) <= truncation_bound(wiener_kernel, tau, 20)
