"""Run configuration.

Precedence, lowest to highest: built-in defaults, config file, environment
variables with the ``NSAXI_`` prefix, explicit overrides (CLI flags).
Config files are flat ``key = value`` text; ``#`` starts a comment.
Unknown keys are rejected.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass
from typing import Mapping

from .errors import ConfigError

ENV_PREFIX = "NSAXI_"


@dataclass(frozen=True)
class RunConfig:
    # integrator
    rtol: float = 1e-11
    atol: float = 1e-13
    # steps are taken this much below the acceptance tolerance so the dense
    # interpolant's own slope keeps the ODE residual within its contract
    interp_tol_factor: float = 1e-3
    pole_offset: float = 1e-8
    escape_factor: float = 8.0
    # tolerances for membership and matching
    membership_rtol: float = 1e-12
    extremal_rtol: float = 1e-9
    match_abs: float = 1e-3
    match_rel: float = 0.25
    # series construction
    series_max_terms: int = 200
    series_growth_cap: float = 1e8
    # check and export grids
    grid_n: int = 33
    residual_points: int = 1000
    fd_step: float = 1e-5
    deriv_cap: float = 1000.0
    # output
    format: str = "csv"
    out: str = ""
    jobs: int = 1
    suite: str = ""
    strict: bool = False

    def validated(self) -> "RunConfig":
        positive = (
            "rtol", "atol", "pole_offset", "escape_factor", "membership_rtol",
            "extremal_rtol", "match_abs", "match_rel", "series_growth_cap",
            "fd_step", "deriv_cap",
        )
        for name in positive:
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.grid_n < 2:
            raise ConfigError(f"grid_n must be >= 2, got {self.grid_n}")
        if self.residual_points < 2:
            raise ConfigError(f"residual_points must be >= 2, got {self.residual_points}")
        if self.series_max_terms < 8:
            raise ConfigError(f"series_max_terms must be >= 8, got {self.series_max_terms}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be 'csv' or 'json', got {self.format!r}")
        if not (0 < self.pole_offset < 1e-3):
            raise ConfigError(f"pole_offset must lie in (0, 1e-3), got {self.pole_offset!r}")
        if not (0 < self.interp_tol_factor <= 1):
            raise ConfigError(
                f"interp_tol_factor must lie in (0, 1], got {self.interp_tol_factor!r}")
        return self

    def solver_key(self) -> tuple:
        """Fields that influence solver output, used as a cache key part."""
        return (self.rtol, self.atol, self.interp_tol_factor, self.pole_offset,
                self.escape_factor, self.membership_rtol, self.extremal_rtol,
                self.series_max_terms, self.series_growth_cap)


DEFAULT = RunConfig()

_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}


def _parse_value(name: str, raw: str):
    f = _FIELDS[name]
    raw = raw.strip()
    if f.type in ("bool", bool):
        low = raw.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"cannot parse boolean for {name!r}: {raw!r}")
    try:
        if f.type in ("int", int):
            return int(raw)
        if f.type in ("float", float):
            return float(raw)
    except ValueError as e:
        raise ConfigError(f"cannot parse value for {name!r}: {raw!r}") from e
    return raw


def read_config_file(path: str) -> dict:
    values: dict = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as e:
        raise ConfigError(f"cannot read config file {path!r}: {e}") from e
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line.rstrip()!r}")
        key, raw = text.split("=", 1)
        key = key.strip()
        if key not in _FIELDS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _parse_value(key, raw)
    return values


def env_overrides(env: Mapping[str, str] | None = None) -> dict:
    env = os.environ if env is None else env
    values: dict = {}
    for key, raw in env.items():
        if not key.startswith(ENV_PREFIX):
            continue
        name = key[len(ENV_PREFIX):].lower()
        if name not in _FIELDS:
            raise ConfigError(f"unknown configuration key in environment: {key}")
        values[name] = _parse_value(name, raw)
    return values


def load_config(path: str | None = None,
                env: Mapping[str, str] | None = None,
                overrides: Mapping[str, object] | None = None) -> RunConfig:
    values: dict = {}
    if path:
        values.update(read_config_file(path))
    values.update(env_overrides(env))
    if overrides:
        for key, val in overrides.items():
            if key not in _FIELDS:
                raise ConfigError(f"unknown configuration key: {key!r}")
            if val is not None:
                values[key] = val
    return RunConfig(**values).validated()
