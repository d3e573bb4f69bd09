import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.polynomial.hermite_e import hermegauss

from uvstat.common import stream
from uvstat.enums import StreamComponent
from uvstat.limit.hermite import hermite, hermite_moment_bound, hermite_table, multiplicity


def test_closed_forms():
    x = np.linspace(-4, 4, 81)
    np.testing.assert_allclose(hermite(0, x), np.ones_like(x))
    np.testing.assert_allclose(hermite(1, x), x)
    np.testing.assert_allclose(hermite(2, x), x ** 2 - 1, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(hermite(3, x), x ** 3 - 3 * x, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(hermite(4, x), x ** 4 - 6 * x ** 2 + 3, rtol=1e-12, atol=1e-12)
    assert hermite(2, 3.0) == 8.0
    assert isinstance(hermite(0, 1.5), float)
    with pytest.raises(ValueError):
        hermite(-1, 0.0)


def test_table_matches_recurrence():
    x = np.array([-1.3, 0.0, 2.2])
    table = hermite_table(6, x)
    assert table.shape == (7, 3)
    for k in range(7):
        np.testing.assert_allclose(table[k], hermite(k, x), rtol=1e-12, atol=1e-12)


def gaussian_expectation(values):
    """
    E g(Z) from g at the probabilists' Gauss-Hermite nodes, exact for polynomials of degree < 80
    """
    _, weights = hermegauss(40)
    return float(np.dot(weights, values)) / math.sqrt(2 * math.pi)


def test_orthogonality_under_gaussian_weight():
    nodes, _ = hermegauss(40)
    exact = hermite_table(6, nodes)
    n = 1_000_000
    z = stream(8, 0, StreamComponent.outer, 0).standard_normal(n)
    table = hermite_table(6, z)
    for j in range(7):
        for k in range(j, 7):
            expected = math.factorial(j) if j == k else 0.0
            assert gaussian_expectation(exact[j] * exact[k]) == pytest.approx(expected, abs=1e-8)
            variance = gaussian_expectation((exact[j] * exact[k]) ** 2) - expected ** 2
            assert abs(np.mean(table[j] * table[k]) - expected) <= 3 * math.sqrt(variance / n)


def test_multiplicity_profile():
    profile = multiplicity((3, 1, 3))
    assert profile.indices == (1, 3)
    assert profile.multiplicities == (1, 2)
    assert profile.order == 3
    assert profile.nu(3) == 2 and profile.nu(2) == 0
    assert profile.as_dict() == {1: 1, 3: 2}
    tau = np.array([0.5, 9.0, 2.0])
    assert profile.hermite_product(tau) == pytest.approx(0.5 * (2.0 ** 2 - 1))
    assert profile.monomial(tau) == pytest.approx(0.5 * 4.0)


@given(st.lists(st.integers(1, 8), min_size=1, max_size=6))
def test_multiplicities_sum_to_order(index):
    profile = multiplicity(index)
    assert profile.order == len(index)
    assert list(profile.indices) == sorted(set(index))


def test_hermite_moment_bound():
    tau = np.array([[1.0, 2.0], [-1.0, 0.0]])
    profiles = [multiplicity((1, 1)), multiplicity((2,))]
    # |H_2(1)| = |H_2(-1)| = 0 and mean |tau_2| = 1
    assert hermite_moment_bound(profiles, tau) == pytest.approx(1.0)
    assert hermite_moment_bound([], tau) == 0.0
