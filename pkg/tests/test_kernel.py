import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from uvstat.basis.sine_wiener import SineWienerBasis
from uvstat.enums import EigenFormula
from uvstat.exceptions import IndexRangeError, OrderTooLargeError
from uvstat.kernel import EigenSeries, KernelSpec, degeneracy_defect


def test_wiener_series_reconstructs_kernel():
    basis = SineWienerBasis(400)
    kernel = KernelSpec.from_eigen_series(basis, EigenSeries.wiener())
    rng = np.random.default_rng(3)
    points = rng.uniform(-1, 1, size=(100, 2))
    exact = np.sign(points[:, 0] * points[:, 1]) * np.minimum(np.abs(points[:, 0]), np.abs(points[:, 1]))
    bound = 2 * kernel.tail_mass(400)
    assert np.max(np.abs(kernel.evaluate_many(points) - exact)) <= bound


def test_wiener_eigenvalues_sum_to_half():
    series = EigenSeries.wiener()
    n = 100_000
    assert float(series.lambdas(n).sum()) + series.tail(n) == pytest.approx(0.5, abs=1e-3)
    assert series.lambdas(1)[0] == pytest.approx(4 / np.pi ** 2)


def test_eigen_formulas():
    assert EigenSeries.one_over_k().tail(10) == np.inf
    assert not EigenSeries.one_over_k().summable_abs
    explicit = EigenSeries.explicit([0.5, 0.25])
    assert np.array_equal(explicit.lambdas(4), [0.5, 0.25, 0.0, 0.0])
    assert explicit.tail(1) == 0.25
    assert explicit.formula == EigenFormula.explicit
    assert np.allclose(explicit.scaled(2).lambdas(2), [1.0, 0.5])


def test_coefficients_and_lookup(sine_basis):
    kernel = KernelSpec.from_coefficients(sine_basis, {(1, 2): 1.5, (3, 3): -2.0, (4, 1): 0.0})
    assert kernel.order == 2
    assert kernel.coefficient((1, 2)) == 1.5
    assert kernel.coefficient((2, 1)) == 0.0
    indices, values = kernel.coefficients(2)
    assert indices.tolist() == [[1, 2]]
    assert values.tolist() == [1.5]
    assert kernel.tail_mass(2) == 2.0


def test_kernel_validation(sine_basis):
    with pytest.raises(ValueError):
        KernelSpec.from_coefficients(sine_basis, {(0, 1): 1.0})
    with pytest.raises(IndexRangeError):
        KernelSpec.from_coefficients(sine_basis, {(1, 201): 1.0})
    with pytest.raises(IndexRangeError):
        KernelSpec.from_eigen_series(sine_basis, EigenSeries.wiener()).check_trunc(500)
    with pytest.raises(ValueError):
        KernelSpec.from_coefficients(sine_basis, {(1,): 1.0}, diagonal_override=1.0)


def test_diagonal_override(sine_basis):
    kernel = KernelSpec.from_eigen_series(sine_basis, EigenSeries.wiener(), diagonal_override=2.0)
    plain = KernelSpec.from_eigen_series(sine_basis, EigenSeries.wiener())
    assert kernel.evaluate([0.3, 0.3]) == 2.0
    assert kernel.evaluate([0.3, 0.5]) == pytest.approx(plain.evaluate([0.3, 0.5]))
    assert kernel.diagonal_expectation() == 2.0


def test_diagonal_expectation(wiener_kernel):
    expected = 0.5 - wiener_kernel.eigen.tail(20)
    assert wiener_kernel.diagonal_expectation(20) == pytest.approx(expected, abs=1e-6)
    heavy = KernelSpec.from_eigen_series(wiener_kernel.basis, EigenSeries.one_over_k())
    assert heavy.diagonal_expectation() == np.inf


def test_symmetrize(sine_basis):
    kernel = KernelSpec.from_coefficients(sine_basis, {(1, 2): 1.0, (2, 2): 3.0})
    assert not kernel.is_symmetric()
    symmetric = kernel.symmetrize()
    assert symmetric.is_symmetric()
    assert symmetric.coefficient((1, 2)) == 1.0
    assert symmetric.coefficient((2, 1)) == 1.0
    assert symmetric.coefficient((2, 2)) == 6.0
    big = KernelSpec.from_coefficients(sine_basis, {(1,) * 7: 1.0})
    with pytest.raises(OrderTooLargeError):
        big.symmetrize()


def test_splitting_kernel(sine_basis):
    kernel = KernelSpec.splitting(sine_basis, [{1: 2.0, 3: 1.0}, {2: 3.0}])
    assert kernel.coefficient((1, 2)) == 6.0
    assert kernel.coefficient((3, 2)) == 3.0
    t, s = 0.4, -0.7
    expected = (2.0 * sine_basis.evaluate(1, t) + sine_basis.evaluate(3, t)) * 3.0 * sine_basis.evaluate(2, s)
    assert kernel.evaluate([t, s]) == pytest.approx(expected)


@given(st.floats(min_value=-4, max_value=4, allow_nan=False), st.floats(-1, 1), st.floats(-1, 1))
def test_scaling_is_linear(factor, t, s):
    kernel = KernelSpec.from_coefficients(SineWienerBasis(10), {(1, 2): 0.7, (3, 1): -1.1})
    assert kernel.scaled(factor).evaluate([t, s]) == pytest.approx(factor * kernel.evaluate([t, s]), abs=1e-12)


def test_canonical_kernel_has_no_defect(wiener_kernel):
    estimate = degeneracy_defect(wiener_kernel, slot=1, mc_size=200, seed=5, trunc=20)
    assert estimate.value < 1e-10


def test_non_canonical_kernel_has_defect(sine_basis):
    kernel = KernelSpec.from_coefficients(sine_basis, {(0, 1): 1.0}, canonical=False)
    estimate = degeneracy_defect(kernel, slot=1, mc_size=2000, seed=5)
    assert estimate.value == pytest.approx(1.0, abs=0.1)
    with pytest.raises(IndexRangeError):
        degeneracy_defect(kernel, slot=3, mc_size=10, seed=5)
