import logging
from typing import Callable, Dict, Iterable, List, Tuple

import numpy as np

from uvstat.common import pairwise_sum
from uvstat.enums import LimitLaw
from uvstat.exceptions import IndexRangeError, NonSummableError
from uvstat.kernel import KernelSpec
from uvstat.limit.covariance import CovarianceModel, sample_tau
from uvstat.limit.hermite import MultiplicityProfile, hermite, hermite_moment_bound, multiplicity

logger = logging.getLogger("uvstat.limit.sampler")


def _trunc(kernel: KernelSpec, model: CovarianceModel, trunc: int = None) -> int:
    if trunc is None:
        return min(kernel.basis.max_index, model.dim)
    if trunc > model.dim:
        raise IndexRangeError(f"truncation {trunc} exceeds covariance dim {model.dim}")
    return kernel.check_trunc(trunc)


def _require_summable(kernel: KernelSpec, law: str):
    if kernel.is_eigen and not kernel.eigen.summable_abs:
        raise NonSummableError(
            f"{law} needs absolutely summable coefficients, {kernel.eigen.formula.value} is not"
        )


def _require_order_two(kernel: KernelSpec, law: str):
    if kernel.order != 2:
        raise ValueError(f"{law} is defined for order-2 kernels, got order {kernel.order}")


def _shell_sum(indices: np.ndarray, terms: np.ndarray) -> float:
    """
    sum over ascending max-index shells, pairwise inside each shell and across shells
    """
    if terms.size == 0:
        return 0.0
    shells = indices.max(axis=1)
    order = np.argsort(shells, kind="stable")
    shells, terms = shells[order], terms[order]
    bounds = np.flatnonzero(np.diff(shells)) + 1
    totals = [pairwise_sum(part) for part in np.split(terms, bounds)]
    return float(pairwise_sum(np.asarray(totals)))


def profiles(kernel: KernelSpec, trunc: int) -> List[MultiplicityProfile]:
    indices, _ = kernel.coefficients(trunc)
    return [multiplicity(row) for row in indices.tolist()]


def hermite_terms(kernel: KernelSpec, tau: np.ndarray, trunc: int) -> Tuple[np.ndarray, np.ndarray]:
    indices, values = kernel.coefficients(trunc)
    if kernel.is_eigen:
        return indices, values * hermite(kernel.order, tau[indices[:, 0] - 1])
    products = np.asarray([float(p.hermite_product(tau)) for p in profiles(kernel, trunc)])
    return indices, values * products


def monomial_terms(kernel: KernelSpec, tau: np.ndarray, trunc: int) -> Tuple[np.ndarray, np.ndarray]:
    indices, values = kernel.coefficients(trunc)
    products = np.ones(values.size)
    for slot in range(kernel.order):
        products = products * tau[indices[:, slot] - 1]
    return indices, values * products


def centered_terms(
    kernel: KernelSpec, tau: np.ndarray, trunc: int, center: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """
    f_ab (tau_a tau_b - center[a - 1, b - 1]) for an order-2 kernel
    """
    indices, values = kernel.coefficients(trunc)
    a, b = indices[:, 0] - 1, indices[:, 1] - 1
    return indices, values * (tau[a] * tau[b] - center[a, b])


def limit_u_sample(
    kernel: KernelSpec, model: CovarianceModel, seed: int, replicate_id: int, trunc: int = None
) -> float:
    """
    sum_i f_i prod_j H_{nu_j(i)}(tau_j), the U-statistic limit under absolute summability
    """
    _require_summable(kernel, "U-statistic limit")
    trunc = _trunc(kernel, model, trunc)
    tau = sample_tau(model, seed, replicate_id)
    return _shell_sum(*hermite_terms(kernel, tau, trunc))


def limit_v_sample(
    kernel: KernelSpec, model: CovarianceModel, seed: int, replicate_id: int, trunc: int = None
) -> float:
    """
    sum_i f_i tau_{i_1} ... tau_{i_m}
    """
    _require_summable(kernel, "V-statistic limit")
    trunc = _trunc(kernel, model, trunc)
    tau = sample_tau(model, seed, replicate_id)
    return _shell_sum(*monomial_terms(kernel, tau, trunc))


def claimed_limit_sample(
    kernel: KernelSpec, model: CovarianceModel, seed: int, replicate_id: int, trunc: int = None
) -> float:
    """
    sum f_ab (tau_a tau_b - delta_ab), i.e. sum_k lambda_k (tau_k^2 - 1) for an eigen series,
    taken at face value for dependent data
    """
    _require_order_two(kernel, "claimed limit")
    _require_summable(kernel, "claimed limit")
    trunc = _trunc(kernel, model, trunc)
    tau = sample_tau(model, seed, replicate_id)
    return _shell_sum(*centered_terms(kernel, tau, trunc, np.eye(trunc)))


def remainder_limit_sample(
    kernel: KernelSpec, model: CovarianceModel, seed: int, replicate_id: int, trunc: int = None
) -> float:
    """
    limit of the pairs at distance >= 2 of a 1-dependent sequence: sum f_ab (tau_a tau_b - Sigma_ab);
    converges for coefficients summable in square only
    """
    _require_order_two(kernel, "remainder limit")
    trunc = _trunc(kernel, model, trunc)
    tau = sample_tau(model, seed, replicate_id)
    return _shell_sum(*centered_terms(kernel, tau, trunc, model.matrix))


def prop2_limit_sample(
    kernel: KernelSpec,
    model: CovarianceModel,
    seed: int,
    replicate_id: int,
    trunc: int = None,
    offset: float = None,
) -> float:
    """
    E f(Y, Y) / 2 plus the remainder limit, for the 1-dependent shift with a diagonal override
    """
    _require_summable(kernel, "diagonal-modified limit")
    if offset is None:
        offset = diagonal_offset(kernel, trunc)
    return offset + remainder_limit_sample(kernel, model, seed, replicate_id, trunc)


def diagonal_offset(kernel: KernelSpec, trunc: int = None) -> float:
    """
    E f(Y, Y) / 2, the almost sure limit of the neighbouring-pair term of the shift sequence
    """
    return kernel.diagonal_expectation(trunc) / 2.0


SAMPLERS: Dict[LimitLaw, Callable] = {
    LimitLaw.theorem1_u: limit_u_sample,
    LimitLaw.theorem2_v: limit_v_sample,
    LimitLaw.prop2: prop2_limit_sample,
    LimitLaw.claimed: claimed_limit_sample,
}


def limit_samples(
    law: LimitLaw,
    kernel: KernelSpec,
    model: CovarianceModel,
    seed: int,
    replicate_ids: Iterable[int],
    trunc: int = None,
) -> np.ndarray:
    """
    one draw per replicate id; every law shares the tau of a given replicate id
    """
    law = LimitLaw(law)
    sampler = SAMPLERS[law]
    extra = {}
    if law == LimitLaw.prop2:
        extra["offset"] = diagonal_offset(kernel, trunc)
    return np.asarray(
        [sampler(kernel, model, seed, rid, trunc, **extra) for rid in replicate_ids],
        dtype=np.float64,
    )


def remainder_samples(
    kernel: KernelSpec, model: CovarianceModel, seed: int, replicate_ids: Iterable[int], trunc: int = None
) -> np.ndarray:
    return np.asarray(
        [remainder_limit_sample(kernel, model, seed, rid, trunc) for rid in replicate_ids],
        dtype=np.float64,
    )


def truncation_bound(kernel: KernelSpec, tau_samples: np.ndarray, trunc: int) -> float:
    """
    C * tail_mass(trunc) with C the empirical max of E|prod H| over the stored multi-indices
    """
    upto = min(kernel.basis.max_index, np.shape(tau_samples)[-1])
    constant = hermite_moment_bound(profiles(kernel, upto), tau_samples)
    return constant * kernel.tail_mass(trunc)


def v_limit_variance(kernel: KernelSpec, model: CovarianceModel, trunc: int = None) -> float:
    """
    Var(sum_i f_i tau_i) = f' Sigma f for an order-1 kernel
    """
    if kernel.order != 1:
        raise ValueError(f"closed-form variance needs an order-1 kernel, got {kernel.order}")
    trunc = _trunc(kernel, model, trunc)
    indices, values = kernel.coefficients(trunc)
    weights = np.zeros(trunc)
    weights[indices[:, 0] - 1] = values
    return model.quadratic_form(weights)
