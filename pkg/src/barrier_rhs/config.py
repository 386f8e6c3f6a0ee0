"""Run configuration for the command-line tools.

Config files hold one ``key = value`` per line; ``#`` starts a comment.
Values given on the command line take precedence over the file.
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from .core import PhysicalConfig

MIN_NODES = 16


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    v0: float = 10.0
    a: float = 0.0
    b: float = 1.0
    m: float = 1.0
    hbar: float = 1.0
    x_min: float = -3.0
    x_max: float = 4.0
    n_x: int = 71
    k_min: float = 1e-3
    k_max: float = 40.0
    n_k: int = 4001
    energy: complex = 5.0
    family: str = "plus"
    side: str = "left"
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("n_x", "n_k"):
            if getattr(self, name) < MIN_NODES:
                raise ConfigError(f"{name} must be at least {MIN_NODES}, got {getattr(self, name)}")
        if not self.x_max > self.x_min:
            raise ConfigError("x_max must exceed x_min")
        if not self.k_max > self.k_min > 0:
            raise ConfigError("need 0 < k_min < k_max")
        if self.family not in ("plus", "minus", "tilde"):
            raise ConfigError(f"family must be plus, minus or tilde, got {self.family!r}")
        if self.side not in ("left", "right"):
            raise ConfigError(f"side must be left or right, got {self.side!r}")
        try:
            self.physical
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def physical(self) -> PhysicalConfig:
        return PhysicalConfig(self.v0, self.a, self.b, self.m, self.hbar)

    def summary(self) -> str:
        d = asdict(self)
        d.pop("tolerances")
        return " ".join(f"{k}={v}" for k, v in d.items())


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(name: str, raw: str):
    kind = _TYPES[name]
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        if kind == "complex":
            return complex(raw.replace(" ", "").replace("i", "j"))
        return raw
    except ValueError as exc:
        raise ConfigError(f"cannot parse {name}={raw!r}") from exc


def parse_pairs(lines, source: str = "<args>") -> dict:
    """``key = value`` lines into typed overrides; unknown keys are errors."""
    out: dict = {}
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{n}: expected key = value, got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _TYPES or key == "tolerances":
            raise ConfigError(f"{source}:{n}: unknown key {key!r}")
        out[key] = _coerce(key, raw)
    return out


def load_config(path: str | os.PathLike | None, overrides: dict | None = None) -> RunConfig:
    values: dict = {}
    if path is not None:
        p = Path(path)
        if not p.is_file():
            raise ConfigError(f"config file {p} not found")
        values.update(parse_pairs(p.read_text().splitlines(), str(p)))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return replace(RunConfig(), **values)


def parse_tolerances(items) -> dict:
    """NAME=VALUE strings from ``--tol-override``."""
    out = {}
    for item in items or ():
        if "=" not in item:
            raise ConfigError(f"--tol-override expects NAME=VALUE, got {item!r}")
        name, raw = item.split("=", 1)
        try:
            out[name.strip()] = float(raw)
        except ValueError as exc:
            raise ConfigError(f"bad tolerance value {raw!r}") from exc
    return out

