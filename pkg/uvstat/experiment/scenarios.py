"""
Built-in scenarios, written the way they would appear under ``scenarios:`` in uvstat.yaml.
"""
from typing import Dict, List

BUILTIN_SCENARIOS: List[Dict] = [
    {
        "name": "iid_vstat_wiener",
        "kind": "convergence",
        "description": "V-statistic of the Wiener kernel on iid uniforms against its Gaussian quadratic limit",
        "seed": 20240601,
        "process": {"process_id": "iid"},
        "kernel": {"family": "sine_wiener", "order": 2, "eigenvalues": "wiener", "truncation": 200},
        "statistic": "V",
        "n_grid": [100, 400, 1600],
        "replicates": 2000,
        "limit_replicates": 2000,
        "limits": ["theorem2_v"],
        "thresholds": {"theorem2_v": {"ks_max": 0.075}, "require_decreasing": True},
    },
    {
        "name": "dep_ustat_theorem1",
        "kind": "convergence",
        "description": "U-statistic on the 1-dependent shift over signed-geometric values, where the series "
        "identity survives dependence, against the Hermite limit with covariance 3/2 I",
        "seed": 20240602,
        "process": {"process_id": "one_dependent_shift"},
        "kernel": {
            "family": "discrete_signed",
            "order": 2,
            "eigenvalues": [0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625],
            "truncation": 8,
        },
        "statistic": "U",
        "n_grid": [100, 400, 1600],
        "replicates": 1000,
        "limit_replicates": 1000,
        "limits": ["theorem1_u"],
        "thresholds": {"theorem1_u": {"ks_max": 0.1}, "require_decreasing": False},
    },
    {
        "name": "prop2_refute_eagleson",
        "kind": "convergence",
        "description": "U-statistic of the Wiener kernel with f(t, t) = 1 + beta on the 1-dependent uniform shift; "
        "the diagonal-corrected law fits, the classical quadratic law does not",
        "seed": 20240603,
        "process": {"process_id": "one_dependent_shift"},
        "kernel": {
            "family": "sine_wiener",
            "order": 2,
            "eigenvalues": "wiener",
            "beta": 1.0,
            "truncation": 200,
        },
        "statistic": "U",
        "n_grid": [400, 1600],
        "replicates": 2000,
        "limit_replicates": 2000,
        "limits": ["prop2", "claimed"],
        "thresholds": {"prop2": {"ks_max": 0.08}, "claimed": {"ks_min": 0.25}},
    },
    {
        "name": "prop4_divergence",
        "kind": "divergence",
        "description": "eigenvalues 1/k on the 1-dependent signed-geometric shift: the neighbouring-pair term "
        "grows with n while the far pairs settle; at truncation 30 the growth is log-like, so only a mild rise "
        "of the median is required",
        "seed": 20240604,
        "process": {"process_id": "one_dependent_shift"},
        "kernel": {"family": "discrete_signed", "order": 2, "eigenvalues": "one_over_k", "truncation": 30},
        "statistic": "U",
        "n_grid": [500, 1000, 2000, 4000],
        "replicates": 500,
        "thresholds": {
            # median diagonal at n=4000 over n=500; about 1.09 at truncation 30
            "min_growth": 1.05,
            "remainder_ks_max": 0.08,
            "remainder_ks_between": [1000, 4000],
        },
    },
    {
        "name": "covariance_check",
        "kind": "covariance",
        "description": "analytic limit covariance of the 1-dependent shift against a long-path Monte Carlo estimate",
        "seed": 20240605,
        "process": {"process_id": "one_dependent_shift"},
        "kernel": {"family": "sine_wiener", "order": 2, "eigenvalues": "wiener", "truncation": 5},
        "covariance_mode": "mc",
        "mc_size": 100000,
        "thresholds": {"stderr_multiplier": 3.0, "expected_variance": 1.5},
    },
    {
        "name": "ortho_check",
        "kind": "orthonormality",
        "description": "Gram matrices of both shipped bases against the identity",
        "seed": 0,
        "upto": 20,
        "thresholds": {"continuous_tol": 1e-6, "discrete_tol": 1e-9},
    },
]
