import hypothesis
import pytest

from uvstat import factory
from uvstat.enums import BasisFamily, MarginalLawId, ProcessId
from uvstat.factory import init
from uvstat.kernel import EigenSeries, KernelSpec

hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("fast")


@pytest.fixture(scope="session", autouse=True)
def initialize_tests(request):
    init("uvstat.yaml")


@pytest.fixture(scope="session")
def sine_basis():
    return factory.get_basis(BasisFamily.sine_wiener)


@pytest.fixture(scope="session")
def discrete_basis():
    return factory.get_basis(BasisFamily.discrete_signed)


@pytest.fixture(scope="session")
def wiener_kernel(sine_basis):
    return KernelSpec.from_eigen_series(sine_basis, EigenSeries.wiener())


@pytest.fixture(scope="session")
def iid_uniform():
    return factory.get_process(ProcessId.iid, MarginalLawId.uniform_symmetric)


@pytest.fixture(scope="session")
def shift_uniform():
    return factory.get_process(ProcessId.one_dependent_shift, MarginalLawId.uniform_symmetric)


@pytest.fixture(scope="session")
def shift_discrete():
    return factory.get_process(ProcessId.one_dependent_shift, MarginalLawId.signed_geometric)
