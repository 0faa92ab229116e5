"""Run configuration: human units in, validated internal units out.

Config files are JSON objects.  Frequencies are linear MHz (the factor
2*pi to angular rad/us is applied here and nowhere else), lengths are um,
velocities m/s (1 m/s = 1 um/us).  Every omitted key takes the reference
default of the modeled experiment; unknown keys are rejected by name.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field, fields

from .model import DEFAULT_WAVELENGTH_UM, PhysicalParams

__all__ = ["ConfigError", "RunConfig", "parse_config", "parse_overrides"]

TWO_PI = 2.0 * math.pi


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending key."""


@dataclass
class RunConfig:
    """All run inputs in config (human) units.

    Physical block: g0_max, omega0, delta, kappa, gamma in linear MHz;
    w_c, w_p, delta_x, s_y, wavelength in um; v in m/s.  The rest selects
    integrator tolerances, quadrature/axis resolutions, and output.
    """

    g0_max: float = 2.5
    omega0: float = 2.5
    delta: float = 10.0
    kappa: float = 1.25
    gamma: float = 6.0
    w_c: float = 35.0
    w_p: float = 44.0
    v: float = 2.0
    delta_x: float = -39.5
    wavelength: float = DEFAULT_WAVELENGTH_UM
    s_y: float = 100.0
    rtol: float = 1e-9
    atol: float = 1e-12
    n_samples: int = 2001
    n_y: int = 21
    n_z: int = 16
    dx_min: float = -100.0
    dx_max: float = 100.0
    dx_count: int = 41
    t_count: int = 201
    omega0_values: list[float] = field(default_factory=lambda: [1.25, 2.5, 5.0, 10.0, 20.0])

    # keys interpreted as linear-MHz frequencies
    _FREQ_KEYS = ("g0_max", "omega0", "delta", "kappa", "gamma")
    _INT_KEYS = ("n_samples", "n_y", "n_z", "dx_count", "t_count")

    def physical_params(self) -> PhysicalParams:
        """Convert to internal units (rad/us, um, um/us)."""
        try:
            return PhysicalParams(
                g0_max=TWO_PI * self.g0_max,
                omega0_peak=TWO_PI * self.omega0,
                delta=TWO_PI * self.delta,
                kappa=TWO_PI * self.kappa,
                gamma=TWO_PI * self.gamma,
                w_c=self.w_c,
                w_p=self.w_p,
                v=self.v,  # 1 m/s = 1 um/us
                delta_x=self.delta_x,
                wavelength=self.wavelength,
                s_y=self.s_y,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def omega0_values_rad(self) -> list[float]:
        return [TWO_PI * w for w in self.omega0_values]

    def dx_axis(self):
        import numpy as np

        return np.linspace(self.dx_min, self.dx_max, self.dx_count)

    def to_canonical_json(self) -> str:
        """Canonical serialized form; parse(serialize(x)) == x."""
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"


_FIELD_NAMES = {f.name for f in fields(RunConfig)}
# config documents may say "lambda" for the standing-wave period
_ALIASES = {"lambda": "wavelength"}


def _validate(cfg: RunConfig) -> RunConfig:
    positive = ("g0_max", "w_c", "w_p", "v", "wavelength", "rtol", "atol")
    nonnegative = ("omega0", "kappa", "gamma", "s_y")
    for key in positive:
        if not getattr(cfg, key) > 0:
            raise ConfigError(f"{key} must be > 0, got {getattr(cfg, key)}")
    for key in nonnegative:
        if not getattr(cfg, key) >= 0:
            raise ConfigError(f"{key} must be >= 0, got {getattr(cfg, key)}")
    for key in ("delta", "delta_x", "dx_min", "dx_max"):
        if not math.isfinite(getattr(cfg, key)):
            raise ConfigError(f"{key} must be finite, got {getattr(cfg, key)}")
    for key in RunConfig._INT_KEYS:
        if getattr(cfg, key) < 1:
            raise ConfigError(f"{key} must be >= 1, got {getattr(cfg, key)}")
    if cfg.n_samples < 2:
        raise ConfigError(f"n_samples must be >= 2, got {cfg.n_samples}")
    if cfg.dx_count > 1 and not cfg.dx_max > cfg.dx_min:
        raise ConfigError(f"dx_max must exceed dx_min, got [{cfg.dx_min}, {cfg.dx_max}]")
    if not cfg.omega0_values:
        raise ConfigError("omega0_values must be a nonempty list")
    for w in cfg.omega0_values:
        if not (isinstance(w, (int, float)) and math.isfinite(w) and w >= 0):
            raise ConfigError(f"omega0_values entries must be finite and >= 0, got {w!r}")
    return cfg


def _coerce(key: str, value):
    if key == "omega0_values":
        if not isinstance(value, list):
            raise ConfigError(f"{key} must be a list of MHz values, got {value!r}")
        return [float(w) for w in value]
    if key in RunConfig._INT_KEYS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{key} must be an integer, got {value!r}")
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(f"{key} must be finite, got {value!r}")
    return float(value)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON config document."""
    if not text.strip():
        data = {}
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    cfg = RunConfig()
    for raw_key, value in data.items():
        key = _ALIASES.get(raw_key, raw_key)
        if key not in _FIELD_NAMES:
            raise ConfigError(f"unknown config key: {raw_key!r}")
        setattr(cfg, key, _coerce(key, value))
    return _validate(cfg)


def parse_overrides(cfg: RunConfig, pairs: list[str]) -> RunConfig:
    """Apply key=value command-line overrides on top of a parsed config."""
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"override must look like key=value, got {pair!r}")
        raw_key, raw_value = pair.split("=", 1)
        key = _ALIASES.get(raw_key.strip(), raw_key.strip())
        if key not in _FIELD_NAMES:
            raise ConfigError(f"unknown config key: {raw_key.strip()!r}")
        try:
            value = json.loads(raw_value)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"cannot parse value for {key}: {raw_value!r}") from exc
        setattr(cfg, key, _coerce(key, value))
    return _validate(cfg)
