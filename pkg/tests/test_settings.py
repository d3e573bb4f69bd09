import pytest

from uvstat.common import config_hash
from uvstat.enums import EigenFormula, LimitLaw, ProcessId, ScenarioKind, StatisticKind
from uvstat.exceptions import ConfigError, UnknownScenarioError
from uvstat.factory import build_kernel
from uvstat.settings import ExperimentConfig, KernelConfig, Settings

BUILTINS = [
    "iid_vstat_wiener",
    "dep_ustat_theorem1",
    "prop2_refute_eagleson",
    "prop4_divergence",
    "covariance_check",
    "ortho_check",
]


@pytest.fixture
def restore_settings():
    yield
    Settings.init("uvstat.yaml")


def _scenario(**kwargs):
    data = {"name": "tmp", "kind": "convergence", "limits": ["theorem2_v"]}
    data.update(kwargs)
    return data


def test_parse_config_file():
    Settings.init("uvstat.yaml")
    assert Settings.debug() is False
    assert Settings.workers() == 1
    assert Settings.out() == "./results"
    assert Settings.get("sentry", "environment") == "development"
    assert Settings.get("core", "missing", "deeper") is None


def test_scenarios():
    scenarios = Settings.scenarios()
    assert list(scenarios)[: len(BUILTINS)] == BUILTINS
    assert Settings.file_scenarios() == ["smoke_vstat", "smoke_prop2"]
    smoke = Settings.get_scenario("smoke_prop2")
    assert smoke.kind == ScenarioKind.convergence
    assert smoke.process.process_id == ProcessId.one_dependent_shift
    assert smoke.kernel.beta == 1.0
    assert smoke.kernel.eigenvalues == EigenFormula.wiener
    assert smoke.statistic == StatisticKind.u
    assert smoke.n_grid == (100, 400)
    assert smoke.limits == (LimitLaw.prop2, LimitLaw.claimed)
    assert smoke.limit_sample_size == 300


def test_unknown_scenario_suggests():
    with pytest.raises(UnknownScenarioError) as e:
        Settings.get_scenario("ortho_chek")
    assert "ortho_check" in e.value.suggestions
    assert "did you mean" in str(e.value)


@pytest.mark.parametrize(
    "data,message",
    [
        (_scenario(seeds=3), "unknown key 'seeds'"),
        (_scenario(statistic="W"), "accepted: U, U0, V"),
        (_scenario(kernel={"family": "sine_wiener", "eigen": "wiener"}), "unknown key 'eigen'"),
        (_scenario(kernel={"eigenvalues": "explicit"}), "as a list"),
        (_scenario(kernel={"eigenvalues": None}), "needs eigenvalues or coefficients"),
        (_scenario(n_grid=[]), "nonempty"),
        (_scenario(replicates=0), ">= 1"),
        (_scenario(seed=1.5), "integer"),
        (
            _scenario(process={"marginal": "signed_geometric"}, kernel={"family": "sine_wiener"}),
            "does not match",
        ),
        ({"kind": "convergence"}, "missing 'name'"),
    ],
)
def test_invalid_scenarios(data, message):
    with pytest.raises(ConfigError) as e:
        ExperimentConfig.parse(data)
    assert message in str(e.value)


def test_coefficients_and_explicit_eigenvalues(sine_basis):
    config = KernelConfig.parse(
        {"order": 1, "coefficients": [{"index": [1], "value": 2.0}, {"index": [2], "value": 1.0}]}, "k"
    )
    assert config.eigenvalues is None
    kernel = build_kernel(config)
    assert kernel.order == 1 and kernel.coefficient((1,)) == 2.0
    explicit = build_kernel(KernelConfig.parse({"eigenvalues": [0.5, 0.25]}, "k"))
    assert explicit.eigen.formula == EigenFormula.explicit
    assert explicit.coefficient((2, 2)) == 0.25


def test_build_kernel_beta_and_truncation():
    kernel = build_kernel(KernelConfig.parse({"beta": 1.0, "truncation": 50}, "k"))
    assert kernel.diagonal_override == 2.0
    assert kernel.basis.max_index == 200
    wide = build_kernel(KernelConfig.parse({"truncation": 400}, "k"))
    assert wide.basis.max_index == 400


def test_config_hash_stable():
    scenario = Settings.get_scenario("smoke_vstat")
    first = config_hash(scenario.to_dict())
    assert first == config_hash(Settings.get_scenario("smoke_vstat").to_dict())
    assert config_hash(scenario.with_overrides(seed=8).to_dict()) != first
    assert config_hash(scenario.with_overrides(out="elsewhere").to_dict()) != first
    assert scenario.with_overrides() == scenario


def test_file_scenario_replaces_builtin(restore_settings):
    Settings.load({"scenarios": [dict(_scenario(), name="ortho_check", description="mine")]})
    assert Settings.get_scenario("ortho_check").description == "mine"
    assert Settings.get_scenario("ortho_check").kind == ScenarioKind.convergence
    assert Settings.out() == "./results"


@pytest.mark.parametrize(
    "config,message",
    [
        ({"extra": 1}, "unknown key 'extra' at top level"),
        ({"core": {"threads": 2}}, "unknown key 'threads' in core"),
        ({"scenarios": [{"name": "x", "kind": "nope"}]}, "accepted"),
        ([], "mapping"),
    ],
)
def test_invalid_config(config, message, restore_settings):
    with pytest.raises(ConfigError) as e:
        Settings.load(config)
    assert message in str(e.value)


def test_invalid_files(tmp_path, restore_settings):
    broken = tmp_path / "broken.yaml"
    broken.write_text("core: [unclosed\n")
    with pytest.raises(ConfigError):
        Settings.init(str(broken))
    with pytest.raises(ConfigError):
        Settings.init(str(tmp_path / "missing.yaml"))
