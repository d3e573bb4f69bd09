import logging
import logging.handlers
import os
import sys
from typing import Dict, Tuple

from ratelimitingfilter import RateLimitingFilter

from uvstat.basis import Basis
from uvstat.enums import BasisFamily, MarginalLawId, ProcessId
from uvstat.kernel import EigenSeries, KernelSpec
from uvstat.marginal import get_marginal
from uvstat.process import Process
from uvstat.settings import KernelConfig, Settings

_bases: Dict[Tuple[BasisFamily, int], Basis] = {}
_processes: Dict[Tuple[ProcessId, MarginalLawId], Process] = {}


def get_basis(family: BasisFamily, max_index: int = None) -> Basis:
    """
    get basis once
    """
    family = BasisFamily(family)
    b = _bases.get((family, max_index))
    if not b:
        if family == BasisFamily.sine_wiener:
            from uvstat.basis.sine_wiener import SineWienerBasis

            b = SineWienerBasis(max_index)
        elif family == BasisFamily.discrete_signed:
            from uvstat.basis.discrete_signed import DiscreteSignedBasis

            b = DiscreteSignedBasis(max_index)
        else:
            raise NotImplementedError(f"Unsupported basis family {family}")
        _bases[(family, max_index)] = b
    return b


def get_process(process_id: ProcessId, marginal: MarginalLawId) -> Process:
    """
    get process once
    """
    process_id, marginal = ProcessId(process_id), MarginalLawId(marginal)
    p = _processes.get((process_id, marginal))
    if not p:
        if process_id == ProcessId.iid:
            from uvstat.process.iid import IIDProcess

            p = IIDProcess(get_marginal(marginal))
        elif process_id == ProcessId.one_dependent_shift:
            from uvstat.process.one_dependent import OneDependentShift

            p = OneDependentShift(get_marginal(marginal))
        else:
            raise NotImplementedError(f"Unsupported process {process_id}")
        _processes[(process_id, marginal)] = p
    return p


def build_kernel(config: KernelConfig) -> KernelSpec:
    """
    kernel of a scenario; beta sets the constant 1 + beta on the diagonal t_1 = ... = t_m
    """
    max_index = None
    if config.truncation is not None:
        default = get_basis(config.family).max_index
        max_index = config.truncation if config.truncation > default else None
    basis = get_basis(config.family, max_index)
    override = None if config.beta is None else 1.0 + config.beta
    if config.coefficients:
        return KernelSpec.from_coefficients(
            basis, dict(config.coefficients), order=config.order, diagonal_override=override
        )
    if isinstance(config.eigenvalues, tuple):
        series = EigenSeries.explicit(config.eigenvalues)
    else:
        series = EigenSeries(config.eigenvalues)
    return KernelSpec.from_eigen_series(basis, series, order=config.order, diagonal_override=override)


def init_logging():
    """
    init logging config
    """
    base_logger = logging.getLogger("uvstat")
    # init may run again with another config file
    base_logger.handlers.clear()
    debug = Settings.debug()
    if debug:
        base_logger.setLevel(logging.DEBUG)
    else:
        base_logger.setLevel(logging.INFO)
    fmt = logging.Formatter(
        fmt="%(asctime)s - %(name)s:%(lineno)d - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    sh = logging.StreamHandler(sys.stdout)
    sh.setLevel(logging.DEBUG)
    sh.setFormatter(fmt)
    base_logger.addHandler(sh)
    mail = Settings.get("mail")
    if mail:
        rate_limit = RateLimitingFilter(per=60)
        sh = logging.handlers.SMTPHandler(
            mailhost=mail.get("mailhost"),
            fromaddr=mail.get("fromaddr"),
            toaddrs=mail.get("toaddrs"),
            subject=mail.get("subject"),
            credentials=(mail.get("user"), mail.get("password")),
        )
        sh.setLevel(logging.ERROR)
        sh.setFormatter(fmt)
        sh.addFilter(rate_limit)
        base_logger.addHandler(sh)


def init(config_file, required: bool = True):
    """
    init; without required a missing config file falls back to the built-in scenarios
    """
    if required or os.path.exists(config_file):
        Settings.init(config_file)
    else:
        Settings.load({})
    init_logging()
    dsn = Settings.get("sentry", "dsn")
    if dsn:
        import sentry_sdk

        sentry_sdk.init(dsn, environment=Settings.get("sentry", "environment"))
