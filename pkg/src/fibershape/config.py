"""Toolkit configuration: one flat plain-text format for every command.

A config file holds `key = value` lines, `#` comments and blank lines.
Keys are dotted (block.name) and carry their unit as a suffix (_mm, _gpa,
_ue, _hz) so values are never silently converted. Unknown keys are
rejected; every value is validated against the rule named in the schema.
An empty file yields the production defaults.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, fields, replace
from pathlib import Path

from . import beam
from .calibration import DEFAULT_JIG_RADII_MM
from .errors import ConfigError
from .synthesis import (
    DEFAULT_EFFECTIVE_BIAS_MM,
    DEFAULT_FRAME_RATE_HZ,
    DEFAULT_RESOLUTION_MM,
    SensorModel,
)

FLOAT_FMT = ".15g"


@dataclass(frozen=True)
class ToolkitConfig:
    """Validated toolkit settings. Field names mirror the config keys."""

    fiber_radius_mm: float = beam.DEFAULT_FIBER_RADIUS_MM
    fiber_modulus_gpa: float = beam.DEFAULT_FIBER_MODULUS_GPA
    fiber_max_strain: float = beam.DEFAULT_FIBER_MAX_STRAIN
    wire_width_mm: float = beam.DEFAULT_WIRE_WIDTH_MM
    wire_height_mm: float = beam.DEFAULT_WIRE_HEIGHT_MM
    wire_modulus_gpa: float = beam.DEFAULT_WIRE_MODULUS_GPA
    channel_width_mm: float = beam.DEFAULT_CHANNEL_MM[0]
    channel_height_mm: float = beam.DEFAULT_CHANNEL_MM[1]
    sensor_bias_mm: float = DEFAULT_EFFECTIVE_BIAS_MM
    sensor_resolution_mm: float = DEFAULT_RESOLUTION_MM
    sensor_noise_sigma_ue: float = 0.0
    sensor_seed: int = 0
    sensor_rate_hz: float = DEFAULT_FRAME_RATE_HZ
    jig_radii_mm: tuple[float, ...] = DEFAULT_JIG_RADII_MM
    jig_window_start_mm: float = 0.0
    jig_window_end_mm: float = 170.0
    experiment_kind: str = "c_shape"
    experiment_radius_mm: float = 100.0
    experiment_length_mm: float = 170.0
    experiment_straight_mm: float = 50.0
    experiment_sign: int = 1
    experiment_scheme: str = "midpoint"
    output_dir: str = "out"
    output_plots: bool = True

    def fiber_spec(self) -> beam.FiberSpec:
        return beam.FiberSpec(
            radius=self.fiber_radius_mm,
            young_modulus=self.fiber_modulus_gpa,
            max_strain=self.fiber_max_strain,
        )

    def wire_spec(self) -> beam.WireSpec:
        return beam.WireSpec(
            width=self.wire_width_mm,
            height=self.wire_height_mm,
            young_modulus=self.wire_modulus_gpa,
        )

    def channel(self) -> tuple[float, float]:
        return (self.channel_width_mm, self.channel_height_mm)

    def sensor_model(self, seed: int | None = None) -> SensorModel:
        return SensorModel(
            bias=self.sensor_bias_mm,
            spatial_resolution=self.sensor_resolution_mm,
            noise_sigma=self.sensor_noise_sigma_ue,
            seed=self.sensor_seed if seed is None else seed,
        )


def _parse_float(raw: str, key: str, unit: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected a number in {unit}, got {raw!r}") from None


def _positive(key, unit):
    def parse(raw: str) -> float:
        v = _parse_float(raw, key, unit)
        if v <= 0:
            raise ConfigError(f"{key}: expected a positive value in {unit}, got {raw}")
        return v

    return parse


def _nonnegative(key, unit):
    def parse(raw: str) -> float:
        v = _parse_float(raw, key, unit)
        if v < 0:
            raise ConfigError(f"{key}: expected a nonnegative value in {unit}, got {raw}")
        return v

    return parse


def _fraction(key):
    def parse(raw: str) -> float:
        v = _parse_float(raw, key, "dimensionless fraction")
        if not 0 < v < 1:
            raise ConfigError(
                f"{key}: expected a fraction strictly between 0 and 1, got {raw}"
            )
        return v

    return parse


def _integer(key):
    def parse(raw: str) -> int:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{key}: expected an integer, got {raw!r}") from None

    return parse


def _sign(key):
    def parse(raw: str) -> int:
        v = _integer(key)(raw)
        if v not in (1, -1):
            raise ConfigError(f"{key}: expected +1 or -1, got {raw}")
        return v

    return parse


def _choice(key, options):
    def parse(raw: str) -> str:
        if raw not in options:
            raise ConfigError(f"{key}: expected one of {options}, got {raw!r}")
        return raw

    return parse


def _boolean(key):
    def parse(raw: str) -> bool:
        low = raw.strip().lower()
        if low in ("true", "yes", "1"):
            return True
        if low in ("false", "no", "0"):
            return False
        raise ConfigError(f"{key}: expected true or false, got {raw!r}")

    return parse


def _radii_list(key):
    def parse(raw: str) -> tuple[float, ...]:
        try:
            values = tuple(float(v) for v in raw.split(",") if v.strip())
        except ValueError:
            raise ConfigError(
                f"{key}: expected comma-separated radii in mm, got {raw!r}"
            ) from None
        if not values:
            raise ConfigError(f"{key}: expected at least one radius in mm")
        if any(v < 0 for v in values):
            raise ConfigError(f"{key}: radii must be >= 0 mm (0 = straight slot)")
        return values

    return parse


def _string(key):
    return lambda raw: raw


# key -> (dataclass field, parser). Parser order defines the canonical file order.
_SCHEMA: dict[str, tuple[str, object]] = {
    "fiber.radius_mm": ("fiber_radius_mm", _positive("fiber.radius_mm", "mm")),
    "fiber.modulus_gpa": ("fiber_modulus_gpa", _positive("fiber.modulus_gpa", "GPa")),
    "fiber.max_strain": ("fiber_max_strain", _fraction("fiber.max_strain")),
    "wire.width_mm": ("wire_width_mm", _positive("wire.width_mm", "mm")),
    "wire.height_mm": ("wire_height_mm", _nonnegative("wire.height_mm", "mm")),
    "wire.modulus_gpa": ("wire_modulus_gpa", _positive("wire.modulus_gpa", "GPa")),
    "channel.width_mm": ("channel_width_mm", _positive("channel.width_mm", "mm")),
    "channel.height_mm": ("channel_height_mm", _positive("channel.height_mm", "mm")),
    "sensor.bias_mm": ("sensor_bias_mm", _positive("sensor.bias_mm", "mm")),
    "sensor.resolution_mm": ("sensor_resolution_mm", _positive("sensor.resolution_mm", "mm")),
    "sensor.noise_sigma_ue": ("sensor_noise_sigma_ue", _nonnegative("sensor.noise_sigma_ue", "microstrain")),
    "sensor.seed": ("sensor_seed", _integer("sensor.seed")),
    "sensor.rate_hz": ("sensor_rate_hz", _positive("sensor.rate_hz", "Hz")),
    "jig.radii_mm": ("jig_radii_mm", _radii_list("jig.radii_mm")),
    "jig.window_start_mm": ("jig_window_start_mm", _nonnegative("jig.window_start_mm", "mm")),
    "jig.window_end_mm": ("jig_window_end_mm", _positive("jig.window_end_mm", "mm")),
    "experiment.kind": ("experiment_kind", _choice("experiment.kind", ("c_shape", "j_shape"))),
    "experiment.radius_mm": ("experiment_radius_mm", _positive("experiment.radius_mm", "mm")),
    "experiment.length_mm": ("experiment_length_mm", _positive("experiment.length_mm", "mm")),
    "experiment.straight_mm": ("experiment_straight_mm", _positive("experiment.straight_mm", "mm")),
    "experiment.sign": ("experiment_sign", _sign("experiment.sign")),
    "experiment.scheme": ("experiment_scheme", _choice("experiment.scheme", ("midpoint", "euler"))),
    "output.dir": ("output_dir", _string("output.dir")),
    "output.plots": ("output_plots", _boolean("output.plots")),
}

_FIELD_TO_KEY = {field: key for key, (field, _) in _SCHEMA.items()}


def default_config() -> ToolkitConfig:
    return ToolkitConfig()


def parse_config(text: str, source: str = "<string>") -> ToolkitConfig:
    """Parse config text, applying defaults for absent keys."""
    overrides: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(
                f"{source}:{lineno}: expected 'key = value', got {stripped!r}"
            )
        key, _, raw = stripped.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in _SCHEMA:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        field_name, parser = _SCHEMA[key]
        if field_name in overrides:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        overrides[field_name] = parser(raw)
    cfg = replace(ToolkitConfig(), **overrides)
    if cfg.jig_window_end_mm <= cfg.jig_window_start_mm:
        raise ConfigError("jig.window_end_mm: window must end after jig.window_start_mm")
    return cfg


def load_config(path: str | Path) -> ToolkitConfig:
    """Load and validate a config file; a missing file is an error."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    return parse_config(path.read_text(), source=str(path))


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, FLOAT_FMT)
    if isinstance(value, tuple):
        return ", ".join(format(v, FLOAT_FMT) for v in value)
    return str(value)


def serialize_config(cfg: ToolkitConfig) -> str:
    """Canonical text form: every key in schema order, one per line."""
    lines = []
    for key, (field_name, _) in _SCHEMA.items():
        lines.append(f"{key} = {_format_value(getattr(cfg, field_name))}")
    return "\n".join(lines) + "\n"


def config_hash(cfg: ToolkitConfig) -> str:
    """SHA-256 of the canonical serialization; stable across load/save cycles."""
    return hashlib.sha256(serialize_config(cfg).encode()).hexdigest()


# Every dataclass field must be reachable from a config key.
assert {f.name for f in fields(ToolkitConfig)} == set(_FIELD_TO_KEY)
