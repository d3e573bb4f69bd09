import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from uvstat.diagnostics import (
    DistanceRow,
    Provenance,
    SampleSet,
    convergence_table,
    ecdf,
    is_decreasing,
    ks_critical,
    ks_trend,
    ks_two_sample,
    wasserstein1,
)
from uvstat.enums import StatisticKind
from uvstat.exceptions import EmptySampleError

samples = st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=1, max_size=40)
same_size_triples = st.integers(1, 30).flatmap(
    lambda n: st.tuples(*[st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=n, max_size=n)] * 3)
)


def test_ks_extremes():
    a = np.arange(10.0)
    assert ks_two_sample(a, a) == 0.0
    assert ks_two_sample(a, a + 100.0) == 1.0
    assert ks_two_sample([0.0, 1.0], [0.5]) == pytest.approx(0.5)


@given(samples, samples)
def test_ks_symmetric_and_scale_invariant(a, b):
    d = ks_two_sample(a, b)
    assert 0.0 <= d <= 1.0
    assert ks_two_sample(b, a) == pytest.approx(d)
    assert ks_two_sample(2.0 * np.asarray(a), 2.0 * np.asarray(b)) == pytest.approx(d)


def test_wasserstein_shift():
    a = np.linspace(0, 1, 101)
    assert wasserstein1(a, a + 0.3) == pytest.approx(0.3)
    assert wasserstein1(a, a[::-1]) == 0.0


def test_wasserstein_subsample_is_seeded():
    rng = np.random.default_rng(1)
    big, small = rng.normal(size=500), rng.normal(size=100)
    assert wasserstein1(big, small, seed=3) == wasserstein1(big, small, seed=3)
    assert wasserstein1(small, big, seed=3) == wasserstein1(big, small, seed=3)


def test_ecdf():
    values = [3.0, 1.0, 2.0, 2.0]
    np.testing.assert_allclose(ecdf(values, [0.5, 1.0, 2.0, 2.5, 3.0]), [0.0, 0.25, 0.75, 0.75, 1.0])


def test_empty_samples():
    with pytest.raises(EmptySampleError):
        ks_two_sample([], [1.0])
    with pytest.raises(EmptySampleError):
        wasserstein1([1.0], [])
    with pytest.raises(EmptySampleError):
        ecdf([], [0.0])


def test_ks_critical():
    assert ks_critical(2000, 2000) == pytest.approx(0.04295, abs=1e-5)
    assert ks_critical(500, 500) > ks_critical(2000, 2000)


def test_sample_set():
    provenance = Provenance("statistic", 7, n=100, statistic=StatisticKind.v)
    sample = SampleSet([[1.0, 2.0], [3.0, 4.0]], provenance)
    assert len(sample) == sample.replicates == 4
    assert sample.values.dtype == np.float64
    assert ks_two_sample(sample, [1.0, 2.0, 3.0, 4.0]) == 0.0


def test_convergence_table():
    rng = np.random.default_rng(0)
    limit = SampleSet(rng.normal(size=2000), Provenance("theorem2_v", 1))
    statistic = {
        400: SampleSet(rng.normal(size=300), Provenance("statistic", 1, n=400)),
        100: SampleSet(rng.normal(loc=1.0, size=300), Provenance("statistic", 1, n=100)),
    }
    rows = convergence_table(statistic, limit)
    assert [row.n for row in rows] == [100, 400]
    assert all(row.limit == "theorem2_v" and row.replicates == 300 for row in rows)
    assert rows[0].ks > rows[1].ks
    assert rows[0].w1 > rows[1].w1
    assert ks_trend(rows)
    assert convergence_table(statistic, limit, label="other")[0].limit == "other"


def test_is_decreasing():
    assert is_decreasing([0.3, 0.2, 0.1])
    assert is_decreasing([0.3, 0.35, 0.1])
    assert not is_decreasing([0.3, 0.35, 0.1], inversions=0)
    assert not is_decreasing([0.1, 0.2, 0.3])
    rows = [DistanceRow(n, 10, "x", ks, 0.0) for n, ks in [(400, 0.1), (100, 0.3), (200, 0.2)]]
    assert ks_trend(rows, inversions=0)


@given(samples, st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=100, max_size=100))
def test_ecdf_counts(values, thresholds):
    counts = [sum(v <= t for v in values) / len(values) for t in thresholds]
    np.testing.assert_array_equal(ecdf(values, thresholds), counts)


@given(same_size_triples)
def test_wasserstein_triangle_inequality(triple):
    a, b, c = triple
    assert wasserstein1(a, c) <= wasserstein1(a, b) + wasserstein1(b, c) + 1e-9
    assert wasserstein1(a, b) == pytest.approx(wasserstein1(b, a))
