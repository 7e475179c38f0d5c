"""
Core configuration for soficmaps.
Centralizes search caps, budgets and worker counts read from the environment
or from a YAML file.
"""

import dataclasses
import logging
import os
import time
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

import yaml

from .errors import ConfigError

logger = logging.getLogger(__name__)


def _env_true(name: str, default: bool = False) -> bool:
    val = os.getenv(name, str(int(default))).strip().lower()
    return val in ("1", "true", "yes", "on")


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from e


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be a number, got {raw!r}") from e


@dataclass(frozen=True)
class AppConfig:
    """Search caps and runtime settings."""

    threads: int = field(default_factory=lambda: _env_int("SOFIC_THREADS", 1))
    log_level: str = field(default_factory=lambda: os.getenv("SOFIC_LOG_LEVEL", "WARNING"))

    # Oracle
    oracle_max_window: int = field(default_factory=lambda: _env_int("SOFIC_ORACLE_MAX_WINDOW", 2))
    oracle_node_budget: int = field(
        default_factory=lambda: _env_int("SOFIC_ORACLE_NODE_BUDGET", 2_000_000)
    )

    # Decision caps
    h_cap: int = field(default_factory=lambda: _env_int("SOFIC_H_CAP", 2))
    k_cap: int = field(default_factory=lambda: _env_int("SOFIC_K_CAP", 1))
    n_cap: int = field(default_factory=lambda: _env_int("SOFIC_N_CAP", 2))
    c_cap: int = field(default_factory=lambda: _env_int("SOFIC_C_CAP", 1))
    tuple_budget: int = field(default_factory=lambda: _env_int("SOFIC_TUPLE_BUDGET", 200_000))
    candidate_budget: int = field(
        default_factory=lambda: _env_int("SOFIC_CANDIDATE_BUDGET", 64)
    )
    budget_ms: Optional[int] = None

    entropy_tol: float = field(default_factory=lambda: _env_float("SOFIC_ENTROPY_TOL", 1e-9))
    psi_require_fixed_point: bool = field(
        default_factory=lambda: _env_true("SOFIC_PSI_REQUIRE_FIXED_POINT", default=False)
    )
    oracle_cross_check: bool = field(
        default_factory=lambda: _env_true("SOFIC_ORACLE_CROSS_CHECK", default=True)
    )

    def __post_init__(self) -> None:
        for name in ("threads", "h_cap", "n_cap", "tuple_budget", "candidate_budget"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        for name in ("oracle_max_window", "k_cap", "c_cap", "oracle_node_budget"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0")
        if self.budget_ms is not None and self.budget_ms < 0:
            raise ConfigError("budget_ms must be >= 0")

    @classmethod
    def from_env(cls) -> "AppConfig":
        """Create configuration from environment variables, then SOFIC_CONFIG if set."""
        path = os.getenv("SOFIC_CONFIG")
        if path:
            return cls.from_yaml(path)
        return cls()

    @classmethod
    def from_yaml(cls, path: str) -> "AppConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = yaml.safe_load(fh) or {}
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        except yaml.YAMLError as e:
            raise ConfigError(f"invalid YAML in {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"config {path} must be a mapping")
        logger.info(f"Loaded config overrides from {path}: {sorted(data)}")
        return cls().with_overrides(data)

    def with_overrides(self, overrides: Mapping[str, Any]) -> "AppConfig":
        known = {f.name for f in dataclasses.fields(self)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {unknown}")
        clean = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **clean)

    def deadline(self) -> Optional[float]:
        """Monotonic time at which a search phase starting now has to stop."""
        if self.budget_ms is None:
            return None
        return time.monotonic() + self.budget_ms / 1000

    def as_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def log_config(self, console=None):
        """Log the effective configuration for startup visibility."""
        lines = [
            f"[CONFIG] Threads: {self.threads}",
            f"[CONFIG] Caps: h={self.h_cap} k={self.k_cap} n={self.n_cap} c={self.c_cap}",
            f"[CONFIG] Oracle: max window {self.oracle_max_window}, "
            f"node budget {self.oracle_node_budget}",
            f"[CONFIG] Budgets: tuples {self.tuple_budget}, candidates {self.candidate_budget}",
        ]
        for line in lines:
            if console:
                console.log(line)
            else:
                logger.info(line)
