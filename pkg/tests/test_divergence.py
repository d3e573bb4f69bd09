import numpy as np
import pytest

from uvstat.kernel import EigenSeries, KernelSpec
from uvstat.limit.divergence import (
    DivergenceRecord,
    check_divergence_preconditions,
    divergence_replicate,
    divergence_table,
    is_strictly_increasing,
)
from uvstat.statistic import u_stat_factored


@pytest.fixture(scope="module")
def harmonic(sine_basis):
    return KernelSpec.from_eigen_series(sine_basis, EigenSeries.one_over_k())


def test_preconditions(harmonic, wiener_kernel, iid_uniform, shift_uniform, sine_basis):
    check_divergence_preconditions(harmonic, shift_uniform)
    with pytest.raises(ValueError):
        check_divergence_preconditions(wiener_kernel, shift_uniform)
    with pytest.raises(ValueError):
        check_divergence_preconditions(harmonic, iid_uniform)
    with pytest.raises(ValueError):
        check_divergence_preconditions(KernelSpec.from_coefficients(sine_basis, {(1, 2): 1.0}), shift_uniform)
    with pytest.raises(ValueError):
        divergence_table([10, 20], wiener_kernel, shift_uniform, 2, 0)


def test_replicate_parts(harmonic, shift_uniform):
    n, trunc = 60, 40
    record = divergence_replicate((shift_uniform, harmonic, n, 3, 1, trunc))
    assert isinstance(record, DivergenceRecord)
    path, values, shifts = shift_uniform.sample_path_with_shifts(n, 3, 1)
    assert np.array_equal(path, shift_uniform.sample_path(n, 3, 1))
    assert record.u == pytest.approx(u_stat_factored(harmonic, path, trunc), rel=1e-8, abs=1e-10)
    assert record.diagonal + record.remainder == pytest.approx(record.u, rel=1e-12, abs=1e-12)

    expected = 0.0
    for i in range(n - 1):
        if shifts[i] == 1 and shifts[i + 1] == 0:
            expected += harmonic.evaluate([values[i + 1], values[i + 1]], trunc)
    assert record.coincidence == pytest.approx(2.0 * expected / n, rel=1e-10, abs=1e-12)


def test_table_with_custom_mapper(harmonic, shift_uniform):
    calls = []

    def mapper(func, tasks):
        calls.append(len(tasks))
        return [func(task) for task in tasks]

    rows, records = divergence_table([20, 40], harmonic, shift_uniform, 5, 2, 30, mapper)
    assert calls == [5, 5]
    assert [row.n for row in rows] == [20, 40]
    assert all(row.replicates == 5 for row in rows)
    plain, _ = divergence_table([20, 40], harmonic, shift_uniform, 5, 2, 30)
    assert plain == rows
    diagonals = [r.diagonal for r in records[40]]
    assert rows[1].diagonal_median == pytest.approx(float(np.median(diagonals)))


def test_is_strictly_increasing():
    assert is_strictly_increasing([1.0, 2.0, 3.5])
    assert not is_strictly_increasing([1.0, 1.0, 2.0])
    assert not is_strictly_increasing([3.0, 2.0])
    assert is_strictly_increasing([1.0])
