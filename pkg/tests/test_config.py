import time

import pytest

from soficmaps.core.config import AppConfig
from soficmaps.core.errors import ConfigError
from soficmaps.telemetry import configure_logging


def test_env_overrides(monkeypatch):
    monkeypatch.setenv("SOFIC_THREADS", "3")
    monkeypatch.setenv("SOFIC_PSI_REQUIRE_FIXED_POINT", "yes")
    cfg = AppConfig.from_env()
    assert cfg.threads == 3
    assert cfg.psi_require_fixed_point


def test_bad_env_value(monkeypatch):
    monkeypatch.setenv("SOFIC_H_CAP", "two")
    with pytest.raises(ConfigError):
        AppConfig()


def test_yaml_overrides(tmp_path, monkeypatch):
    path = tmp_path / "caps.yaml"
    path.write_text("n_cap: 3\nbudget_ms: 250\n")
    monkeypatch.setenv("SOFIC_CONFIG", str(path))
    cfg = AppConfig.from_env()
    assert cfg.n_cap == 3
    assert cfg.budget_ms == 250


def test_yaml_errors(tmp_path):
    with pytest.raises(ConfigError):
        AppConfig.from_yaml(str(tmp_path / "missing.yaml"))
    bad = tmp_path / "list.yaml"
    bad.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError):
        AppConfig.from_yaml(str(bad))
    unknown = tmp_path / "unknown.yaml"
    unknown.write_text("window: 4\n")
    with pytest.raises(ConfigError):
        AppConfig.from_yaml(str(unknown))


@pytest.mark.parametrize(
    "overrides", [{"threads": 0}, {"k_cap": -1}, {"budget_ms": -5}, {"tuple_budget": 0}]
)
def test_validation(overrides):
    with pytest.raises(ConfigError):
        AppConfig().with_overrides(overrides)


def test_none_overrides_are_ignored():
    cfg = AppConfig(n_cap=4).with_overrides({"n_cap": None})
    assert cfg.n_cap == 4


def test_deadline():
    assert AppConfig().deadline() is None
    before = time.monotonic()
    deadline = AppConfig(budget_ms=1000).deadline()
    assert before + 0.9 <= deadline <= time.monotonic() + 1.0


def test_unknown_log_level():
    with pytest.raises(ConfigError):
        configure_logging("CHATTY")
