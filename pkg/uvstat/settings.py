import copy
import dataclasses
import difflib
import functools
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

import yaml

from uvstat.enums import (
    BasisFamily,
    CovarianceMode,
    EigenFormula,
    LimitLaw,
    MarginalLawId,
    ProcessId,
    ScenarioKind,
    StatisticKind,
)
from uvstat.exceptions import ConfigError, UnknownScenarioError

TOP_LEVEL_KEYS = ("core", "sentry", "mail", "scenarios")
CORE_KEYS = ("debug", "workers", "out")

FAMILY_MARGINALS = {
    BasisFamily.sine_wiener: MarginalLawId.uniform_symmetric,
    BasisFamily.discrete_signed: MarginalLawId.signed_geometric,
}


def _enum(enum_cls, value, key: str, block: str):
    try:
        return enum_cls(value)
    except ValueError:
        accepted = ", ".join(e.value for e in enum_cls)
        raise ConfigError(f"invalid value {value!r} for {block}.{key}, accepted: {accepted}")


def _strict(cls, data, block: str) -> Dict:
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{block} must be a mapping, got {type(data).__name__}")
    names = {f.name for f in dataclasses.fields(cls)}
    for key in data:
        if key not in names:
            raise ConfigError(f"unknown key {key!r} in {block}")
    return dict(data)


def _number(value, kind, key: str, block: str, minimum=None):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{block}.{key} must be a number, got {value!r}")
    if kind is int and int(value) != value:
        raise ConfigError(f"{block}.{key} must be an integer, got {value!r}")
    value = kind(value)
    if minimum is not None and value < minimum:
        raise ConfigError(f"{block}.{key} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class ProcessConfig:
    process_id: ProcessId = ProcessId.iid
    marginal: Optional[MarginalLawId] = None

    @classmethod
    def parse(cls, data, block: str) -> "ProcessConfig":
        data = _strict(cls, data, block)
        if "process_id" in data:
            data["process_id"] = _enum(ProcessId, data["process_id"], "process_id", block)
        if data.get("marginal") is not None:
            data["marginal"] = _enum(MarginalLawId, data["marginal"], "marginal", block)
        return cls(**data)


@dataclass(frozen=True)
class KernelConfig:
    family: BasisFamily = BasisFamily.sine_wiener
    order: int = 2
    eigenvalues: Union[EigenFormula, Tuple[float, ...], None] = EigenFormula.wiener
    coefficients: Tuple[Tuple[Tuple[int, ...], float], ...] = ()
    beta: Optional[float] = None
    truncation: Optional[int] = None

    @classmethod
    def parse(cls, data, block: str) -> "KernelConfig":
        data = _strict(cls, data, block)
        if "family" in data:
            data["family"] = _enum(BasisFamily, data["family"], "family", block)
        if "order" in data:
            data["order"] = _number(data["order"], int, "order", block, minimum=1)
        if data.get("coefficients"):
            entries = []
            for entry in data["coefficients"]:
                if not isinstance(entry, dict) or set(entry) != {"index", "value"}:
                    raise ConfigError(f"{block}.coefficients entries need exactly index and value")
                index = tuple(_number(i, int, "coefficients.index", block, minimum=0) for i in entry["index"])
                entries.append((index, _number(entry["value"], float, "coefficients.value", block)))
            data["coefficients"] = tuple(entries)
            data.setdefault("eigenvalues", None)
        eigenvalues = data.get("eigenvalues", EigenFormula.wiener)
        if isinstance(eigenvalues, list):
            data["eigenvalues"] = tuple(_number(v, float, "eigenvalues", block) for v in eigenvalues)
        elif eigenvalues is not None:
            data["eigenvalues"] = _enum(EigenFormula, eigenvalues, "eigenvalues", block)
            if data["eigenvalues"] == EigenFormula.explicit:
                raise ConfigError(f"{block}.eigenvalues: give the explicit values as a list")
        if data.get("beta") is not None:
            data["beta"] = _number(data["beta"], float, "beta", block)
        if data.get("truncation") is not None:
            data["truncation"] = _number(data["truncation"], int, "truncation", block, minimum=1)
        config = cls(**data)
        if config.eigenvalues is None and not config.coefficients:
            raise ConfigError(f"{block} needs eigenvalues or coefficients")
        return config

    @property
    def marginal(self) -> MarginalLawId:
        return FAMILY_MARGINALS[self.family]


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    kind: ScenarioKind
    description: str = ""
    seed: int = 0
    process: ProcessConfig = field(default_factory=ProcessConfig)
    kernel: KernelConfig = field(default_factory=KernelConfig)
    statistic: StatisticKind = StatisticKind.u
    n_grid: Tuple[int, ...] = (100, 400, 1600)
    replicates: int = 1000
    limit_replicates: Optional[int] = None
    lag: Optional[int] = None
    covariance_mode: CovarianceMode = CovarianceMode.analytic
    mc_size: int = 100_000
    limits: Tuple[LimitLaw, ...] = ()
    thresholds: Dict[str, Any] = field(default_factory=dict)
    upto: int = 20
    out: Optional[str] = None

    @classmethod
    def parse(cls, data) -> "ExperimentConfig":
        name = data.get("name") if isinstance(data, dict) else None
        block = f"scenario {name!r}" if name else "scenario"
        data = _strict(cls, data, block)
        for required in ("name", "kind"):
            if required not in data:
                raise ConfigError(f"{block} is missing {required!r}")
        data["name"] = str(data["name"])
        data["kind"] = _enum(ScenarioKind, data["kind"], "kind", block)
        data["process"] = ProcessConfig.parse(data.get("process"), f"{block}.process")
        data["kernel"] = KernelConfig.parse(data.get("kernel"), f"{block}.kernel")
        if "statistic" in data:
            data["statistic"] = _enum(StatisticKind, data["statistic"], "statistic", block)
        if "covariance_mode" in data:
            data["covariance_mode"] = _enum(
                CovarianceMode, data["covariance_mode"], "covariance_mode", block
            )
        if "n_grid" in data:
            grid = data["n_grid"]
            if not isinstance(grid, list) or not grid:
                raise ConfigError(f"{block}.n_grid must be a nonempty list")
            data["n_grid"] = tuple(_number(n, int, "n_grid", block, minimum=1) for n in grid)
        if "limits" in data:
            data["limits"] = tuple(_enum(LimitLaw, law, "limits", block) for law in data["limits"] or [])
        for key, minimum in (("seed", 0), ("replicates", 1), ("mc_size", 1), ("upto", 1)):
            if key in data:
                data[key] = _number(data[key], int, key, block, minimum=minimum)
        for key in ("limit_replicates", "lag"):
            if data.get(key) is not None:
                data[key] = _number(data[key], int, key, block, minimum=0 if key == "lag" else 1)
        if "thresholds" in data:
            if not isinstance(data["thresholds"], dict):
                raise ConfigError(f"{block}.thresholds must be a mapping")
            data["thresholds"] = copy.deepcopy(data["thresholds"])
        config = cls(**data)
        marginal = config.process.marginal
        if marginal is not None and marginal != config.kernel.marginal:
            raise ConfigError(
                f"{block}: marginal {marginal.value} does not match basis {config.kernel.family.value}"
            )
        return config

    @property
    def limit_sample_size(self) -> int:
        return self.limit_replicates or self.replicates

    def with_overrides(self, seed: int = None, out: str = None) -> "ExperimentConfig":
        changes = {}
        if seed is not None:
            changes["seed"] = seed
        if out is not None:
            changes["out"] = out
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> Dict:
        return dataclasses.asdict(self)


class Settings:
    _config: Dict = {}

    @classmethod
    def init(cls, file_path: str):
        try:
            with open(file_path, "r") as f:
                config = yaml.safe_load(f) or {}
        except OSError as e:
            raise ConfigError(f"cannot read config {file_path}: {e}")
        except yaml.YAMLError as e:
            raise ConfigError(f"malformed yaml in {file_path}: {e}")
        cls.load(config)

    @classmethod
    def load(cls, config: Dict):
        if not isinstance(config, dict):
            raise ConfigError("config root must be a mapping")
        for key in config:
            if key not in TOP_LEVEL_KEYS:
                raise ConfigError(f"unknown key {key!r} at top level")
        for key in config.get("core") or {}:
            if key not in CORE_KEYS:
                raise ConfigError(f"unknown key {key!r} in core")
        cls._config = config
        cls.get.cache_clear()
        cls.scenarios.cache_clear()
        # parse eagerly so a bad scenario fails at startup
        cls.scenarios()

    @classmethod
    def debug(cls) -> bool:
        return bool(cls.get("core", "debug"))

    @classmethod
    def workers(cls) -> int:
        return int(cls.get("core", "workers") or 1)

    @classmethod
    def out(cls) -> str:
        return cls.get("core", "out") or "./results"

    @classmethod
    def file_scenarios(cls) -> List[str]:
        return [s.get("name") for s in cls.get("scenarios") or [] if isinstance(s, dict)]

    @classmethod
    @functools.lru_cache()
    def scenarios(cls) -> Dict[str, ExperimentConfig]:
        """
        built-ins first, then file scenarios; a file scenario replaces a built-in of the same name
        """
        from uvstat.experiment.scenarios import BUILTIN_SCENARIOS

        ret = {}
        for data in BUILTIN_SCENARIOS + list(cls.get("scenarios") or []):
            scenario = ExperimentConfig.parse(data)
            ret[scenario.name] = scenario
        return ret

    @classmethod
    def get_scenario(cls, name: str) -> ExperimentConfig:
        scenarios = cls.scenarios()
        scenario = scenarios.get(name)
        if not scenario:
            raise UnknownScenarioError(name, difflib.get_close_matches(name, scenarios, n=3))
        return scenario

    @classmethod
    @functools.lru_cache()
    def get(cls, *args):
        """
        get config item
        """
        c = cls._config
        for arg in args:
            if not isinstance(c, dict):
                return None
            c = c.get(arg)
        return c
