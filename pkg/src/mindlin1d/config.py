"""Run configuration: flat key = value files, CLI overrides, defaults.

The file format is plain text, one `key = value` per line, `#` comments;
chosen over ini/yaml because it diffs cleanly as an experiment record and
allows the repeatable `wave` key.  Example:

    mode = exact
    grid_n = 128
    wave = sincos 2pi 1 1 1 1
    wave = sincos 4pi 1 1 1 1

Unknown keys are rejected.  Angular frequencies accept multiples of pi
("2pi", "0.5pi", "pi") or plain numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Mapping

from .boundary import RegimeKind
from .exact import Family
from .material import MaterialParams

__all__ = [
    "RunKind",
    "WaveSpec",
    "SimConfig",
    "ConfigError",
    "parse_omega",
    "parse_config",
    "DEFAULT_PARAMS",
]

# Benchmark parameter set used throughout the verification runs.
DEFAULT_PARAMS = MaterialParams(
    rho=1.0, i_mu=1.0, gamma=0.99, a_coupling=-0.01, b_micro=10.0, c_micro=1.0
)

MIN_GRID_N = 8  # WENO5 stencil must fit with room to spare


class ConfigError(ValueError):
    """Invalid or missing configuration input."""


class RunKind(Enum):
    EXACT_VERIFY = "exact"
    INHOMOGENEOUS = "inhomogeneous"


@dataclass(frozen=True)
class WaveSpec:
    """One exact mode as configured: family, omega, amplitude constants."""

    family: Family
    omega: float
    k: tuple[float, float, float, float]


@dataclass
class SimConfig:
    """Fully resolved run configuration."""

    mode: RunKind
    params: MaterialParams = DEFAULT_PARAMS
    grid_n: int = 128
    length: float = 1.0
    t_end: float = 10.0
    cfl: float = 0.4
    waves: list[WaveSpec] = field(default_factory=list)
    regime: RegimeKind = RegimeKind.PERIODIC
    bump_height: float = 0.0
    snapshot_times: list[float] = field(default_factory=list)
    output_dir: str = "out"
    kappa: float = 0.0
    energy_interval: int = 0

    def validate(self) -> None:
        if self.grid_n < MIN_GRID_N:
            raise ConfigError(f"grid_n must be >= {MIN_GRID_N}, got {self.grid_n}")
        if not self.t_end >= 0.0:
            raise ConfigError("t_end must be nonnegative")
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigError("cfl must be in (0, 1]")
        if not self.length > 0.0:
            raise ConfigError("length must be positive")
        if any(t < 0.0 or t > self.t_end for t in self.snapshot_times):
            raise ConfigError("snapshot_times must lie in [0, t_end]")
        if self.mode is RunKind.EXACT_VERIFY:
            if not self.waves:
                raise ConfigError("exact mode requires at least one 'wave' entry")
            if self.regime is not RegimeKind.PERIODIC:
                raise ConfigError("exact mode requires the periodic regime")
        if self.mode is RunKind.INHOMOGENEOUS:
            if self.regime is RegimeKind.PERIODIC:
                raise ConfigError(
                    "inhomogeneous mode requires the strain or null_inflow regime"
                )


def parse_omega(text: str) -> float:
    """Parse "2pi", "pi", "0.5pi", or a plain number."""
    raw = text.strip().lower()
    try:
        if raw.endswith("pi"):
            prefix = raw[:-2].strip()
            return (float(prefix) if prefix else 1.0) * math.pi
        return float(raw)
    except ValueError:
        raise ConfigError(f"cannot parse angular frequency: {text!r}") from None


def _parse_wave(value: str) -> WaveSpec:
    parts = value.split()
    if len(parts) != 6:
        raise ConfigError(
            f"wave needs 'family omega k1 k2 k3 k4', got {value!r}"
        )
    try:
        family = Family(parts[0].lower())
    except ValueError:
        names = ", ".join(f.value for f in Family)
        raise ConfigError(f"unknown wave family {parts[0]!r} (expected {names})") from None
    omega = parse_omega(parts[1])
    if omega == 0.0:
        raise ConfigError("wave omega must be nonzero")
    try:
        k = tuple(float(p) for p in parts[2:])
    except ValueError:
        raise ConfigError(f"wave amplitudes must be numbers: {value!r}") from None
    return WaveSpec(family=family, omega=omega, k=k)


def _parse_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {value!r}") from None


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None


_MODE_NAMES = {kind.value: kind for kind in RunKind}
_REGIME_NAMES = {kind.value: kind for kind in RegimeKind}

_SCALAR_KEYS = {
    "rho", "i_mu", "gamma", "a_coupling", "b_micro", "c_micro",
    "grid_n", "length", "t_end", "cfl", "bump_height", "kappa",
    "energy_interval", "mode", "regime", "output_dir", "snapshot_times",
}
_KNOWN_KEYS = _SCALAR_KEYS | {"wave"}


def _read_file_entries(path: str | Path) -> list[tuple[str, str]]:
    entries = []
    text = Path(path).read_text()
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        entries.append((key, value))
    return entries


def parse_config(
    path: str | Path | None = None,
    overrides: Mapping[str, object] | None = None,
) -> SimConfig:
    """Build a SimConfig from an optional file plus overrides.

    `overrides` maps config keys to already-typed values (strings are also
    accepted); it wins over the file.  The special override key "wave" takes
    a sequence of wave strings and replaces any file-configured waves.
    """
    entries: dict[str, str] = {}
    waves: list[WaveSpec] = []
    if path is not None:
        if not Path(path).exists():
            raise ConfigError(f"config file not found: {path}")
        for key, value in _read_file_entries(path):
            if key == "wave":
                waves.append(_parse_wave(value))
            else:
                if key in entries:
                    raise ConfigError(f"duplicate key {key!r} in {path}")
                entries[key] = value

    overrides = dict(overrides or {})
    for key in overrides:
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
    wave_override = overrides.pop("wave", None)
    if wave_override is not None:
        waves = [
            spec if isinstance(spec, WaveSpec) else _parse_wave(str(spec))
            for spec in wave_override  # type: ignore[union-attr]
        ]
    for key, value in overrides.items():
        if value is None:
            continue
        if key == "snapshot_times" and isinstance(value, (list, tuple)):
            value = " ".join(repr(float(t)) for t in value)
        entries[key] = str(value)

    if "mode" not in entries:
        raise ConfigError("missing required key 'mode' (exact | inhomogeneous)")
    mode_name = entries.pop("mode").lower()
    if mode_name not in _MODE_NAMES:
        raise ConfigError(f"unknown mode {mode_name!r}")
    mode = _MODE_NAMES[mode_name]

    cfg = SimConfig(mode=mode)
    cfg.waves = waves
    if mode is RunKind.INHOMOGENEOUS:
        cfg.t_end = 0.8
        cfg.regime = RegimeKind.STRAIN_EXCITATION

    params = {
        "rho": cfg.params.rho,
        "i_mu": cfg.params.i_mu,
        "gamma": cfg.params.gamma,
        "a_coupling": cfg.params.a_coupling,
        "b_micro": cfg.params.b_micro,
        "c_micro": cfg.params.c_micro,
    }
    for key, value in entries.items():
        if key in params:
            params[key] = _parse_float(key, value)
        elif key == "grid_n":
            cfg.grid_n = _parse_int(key, value)
        elif key == "length":
            cfg.length = _parse_float(key, value)
        elif key == "t_end":
            cfg.t_end = _parse_float(key, value)
        elif key == "cfl":
            cfg.cfl = _parse_float(key, value)
        elif key == "bump_height":
            cfg.bump_height = _parse_float(key, value)
        elif key == "kappa":
            cfg.kappa = _parse_float(key, value)
        elif key == "energy_interval":
            cfg.energy_interval = _parse_int(key, value)
        elif key == "regime":
            regime_name = value.lower()
            if regime_name not in _REGIME_NAMES:
                raise ConfigError(f"unknown regime {value!r}")
            cfg.regime = _REGIME_NAMES[regime_name]
        elif key == "output_dir":
            cfg.output_dir = value
        elif key == "snapshot_times":
            try:
                cfg.snapshot_times = [float(p) for p in value.replace(",", " ").split()]
            except ValueError:
                raise ConfigError(f"snapshot_times must be numbers, got {value!r}") from None

    cfg.params = MaterialParams(**params)
    cfg.validate()
    return cfg


def waves_for_benchmark(case: str) -> list[str]:
    """Wave strings for the two standard verification cases A and B."""
    if case.upper() == "A":
        return ["sincos 2pi 1 1 1 1"]
    if case.upper() == "B":
        return ["sincos 2pi 1 1 1 1", "sincos 4pi 1 1 1 1"]
    raise ConfigError(f"unknown benchmark case {case!r} (expected A or B)")


_PARAM_KEYS = ("rho", "i_mu", "gamma", "a_coupling", "b_micro", "c_micro")


def params_from_file(path: str | Path) -> MaterialParams:
    """Material parameters from a config file, other keys ignored."""
    if not Path(path).exists():
        raise ConfigError(f"config file not found: {path}")
    values = {name: getattr(DEFAULT_PARAMS, name) for name in _PARAM_KEYS}
    for key, value in _read_file_entries(path):
        if key in values:
            values[key] = _parse_float(key, value)
    return MaterialParams(**values)
