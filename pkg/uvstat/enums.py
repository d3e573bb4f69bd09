from enum import Enum, IntEnum


class MarginalLawId(str, Enum):
    uniform_symmetric = "uniform_symmetric"
    signed_geometric = "signed_geometric"


class BasisFamily(str, Enum):
    sine_wiener = "sine_wiener"
    discrete_signed = "discrete_signed"


class ProcessId(str, Enum):
    iid = "iid"
    one_dependent_shift = "one_dependent_shift"


class EigenFormula(str, Enum):
    wiener = "wiener"
    one_over_k = "one_over_k"
    explicit = "explicit"


class StatisticKind(str, Enum):
    u = "U"
    u0 = "U0"
    v = "V"


class CovarianceMode(str, Enum):
    analytic = "analytic"
    mc = "mc"


class LimitLaw(str, Enum):
    theorem1_u = "theorem1_u"
    theorem2_v = "theorem2_v"
    prop2 = "prop2"
    claimed = "claimed"


class ScenarioKind(str, Enum):
    convergence = "convergence"
    divergence = "divergence"
    covariance = "covariance"
    orthonormality = "orthonormality"


class StreamComponent(IntEnum):
    path = 1
    tau = 2
    subsample = 3
    outer = 4
    covariance = 5
    lag_moment = 6


class ExitCode(IntEnum):
    passed = 0
    error = 1
    acceptance_failed = 2
