from uvstat.limit.covariance import (
    CovarianceModel,
    build_covariance,
    factorize,
    repair_psd,
    sample_tau,
    sample_tau_many,
)
from uvstat.limit.hermite import (
    MultiplicityProfile,
    hermite,
    hermite_moment_bound,
    hermite_table,
    multiplicity,
)
from uvstat.limit.sampler import (
    claimed_limit_sample,
    diagonal_offset,
    limit_samples,
    limit_u_sample,
    limit_v_sample,
    prop2_limit_sample,
    remainder_limit_sample,
    remainder_samples,
    truncation_bound,
    v_limit_variance,
)

__all__ = [
    "CovarianceModel",
    "MultiplicityProfile",
    "build_covariance",
    "claimed_limit_sample",
    "diagonal_offset",
    "factorize",
    "hermite",
    "hermite_moment_bound",
    "hermite_table",
    "limit_samples",
    "limit_u_sample",
    "limit_v_sample",
    "multiplicity",
    "prop2_limit_sample",
    "remainder_limit_sample",
    "remainder_samples",
    "repair_psd",
    "sample_tau",
    "sample_tau_many",
    "truncation_bound",
    "v_limit_variance",
]
