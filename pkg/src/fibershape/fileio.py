"""File formats: strain/shape CSVs, calibration model files, run manifests.

All numeric columns are written with 15 significant digits so a write/read
cycle preserves values to that precision. CSV comment lines start with '#'.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .calibration import CalibrationResult, PowerLawModel
from .errors import ConfigError
from .metrics import ErrorReport
from .profiles import PlanarShape, StrainProfile

FLOAT_FMT = ".15g"

STRAIN_HEADER = "s_mm,strain_ue"
SHAPE_HEADER = "s_mm,x_mm,y_mm,theta_rad"

REPORT_COLUMNS = (
    "label",
    "average_strain_ue",
    "average_radius_mm",
    "tip_error_mm",
    "shape_error_mm",
    "area_error_avg_mm2",
    "area_error_total_mm2",
)


def _fmt(x: float) -> str:
    return format(float(x), FLOAT_FMT)


def write_strain_csv(path: str | Path, profile: StrainProfile) -> None:
    lines = []
    for key in sorted(profile.meta):
        lines.append(f"# {key} = {profile.meta[key]}")
    lines.append(STRAIN_HEADER)
    for s, e in zip(profile.positions, profile.strains):
        lines.append(f"{_fmt(s)},{_fmt(e)}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_strain_csv(path: str | Path) -> StrainProfile:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"strain CSV not found: {path}")
    meta: dict[str, object] = {}
    positions, strains = [], []
    header_seen = False
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped.lstrip("#").strip()
            if "=" in body:
                key, _, raw = body.partition("=")
                meta[key.strip()] = _parse_meta_value(raw.strip())
            continue
        if not header_seen:
            if stripped != STRAIN_HEADER:
                raise ConfigError(
                    f"{path}:{lineno}: expected header {STRAIN_HEADER!r}, got {stripped!r}"
                )
            header_seen = True
            continue
        parts = stripped.split(",")
        if len(parts) != 2:
            raise ConfigError(f"{path}:{lineno}: expected 2 columns, got {len(parts)}")
        positions.append(float(parts[0]))
        strains.append(float(parts[1]))
    if not header_seen:
        raise ConfigError(f"{path}: missing header {STRAIN_HEADER!r}")
    return StrainProfile(np.array(positions), np.array(strains), meta)


def _parse_meta_value(raw: str):
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        return raw


def write_shape_csv(path: str | Path, shape: PlanarShape) -> None:
    lines = [SHAPE_HEADER]
    for s, (x, y), th in zip(shape.arc_lengths, shape.points, shape.headings):
        lines.append(f"{_fmt(s)},{_fmt(x)},{_fmt(y)},{_fmt(th)}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_shape_csv(path: str | Path) -> PlanarShape:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"shape CSV not found: {path}")
    rows = []
    header_seen = False
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not header_seen:
            if stripped != SHAPE_HEADER:
                raise ConfigError(
                    f"{path}:{lineno}: expected header {SHAPE_HEADER!r}, got {stripped!r}"
                )
            header_seen = True
            continue
        parts = stripped.split(",")
        if len(parts) != 4:
            raise ConfigError(f"{path}:{lineno}: expected 4 columns, got {len(parts)}")
        rows.append([float(v) for v in parts])
    if not header_seen:
        raise ConfigError(f"{path}: missing header {SHAPE_HEADER!r}")
    arr = np.array(rows)
    return PlanarShape(arr[:, 1:3], arr[:, 3], arr[:, 0])


def write_model_file(path: str | Path, result: CalibrationResult) -> None:
    """Persist a calibration result as flat key = value text."""
    lo, hi = result.model.fit_domain
    lines = [
        f"coefficient_a = {_fmt(result.model.coefficient)}",
        f"exponent_b = {_fmt(result.model.exponent)}",
        f"strain_min_ue = {_fmt(lo)}",
        f"strain_max_ue = {_fmt(hi)}",
        f"residual_rms = {_fmt(result.residual_rms)}",
        f"n_points = {len(result.points)}",
    ]
    if result.straight_noise_ue is not None:
        lines.append(f"straight_noise_ue = {_fmt(result.straight_noise_ue)}")
    for eps, rho in result.points:
        lines.append(f"point = {_fmt(eps)}, {_fmt(rho)}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_model_file(path: str | Path) -> CalibrationResult:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"model file not found: {path}")
    values: dict[str, str] = {}
    points: list[tuple[float, float]] = []
    for line in path.read_text().splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, _, raw = stripped.partition("=")
        key, raw = key.strip(), raw.strip()
        if key == "point":
            eps, rho = (float(v) for v in raw.split(","))
            points.append((eps, rho))
        else:
            values[key] = raw
    try:
        model = PowerLawModel(
            coefficient=float(values["coefficient_a"]),
            exponent=float(values["exponent_b"]),
            fit_domain=(float(values["strain_min_ue"]), float(values["strain_max_ue"])),
        )
        residual = float(values["residual_rms"])
    except KeyError as exc:
        raise ConfigError(f"{path}: missing model field {exc}") from None
    noise = float(values["straight_noise_ue"]) if "straight_noise_ue" in values else None
    return CalibrationResult(
        model=model,
        points=tuple(points),
        residual_rms=residual,
        straight_noise_ue=noise,
    )


def report_row(label: str, report: ErrorReport) -> dict[str, str]:
    """One aggregation-table row for an error report."""
    strain = "" if report.average_strain is None else _fmt(report.average_strain)
    return {
        "label": label,
        "average_strain_ue": strain,
        "average_radius_mm": _fmt(report.average_radius),
        "tip_error_mm": _fmt(report.tip_error),
        "shape_error_mm": _fmt(report.shape_error),
        "area_error_avg_mm2": _fmt(report.area_error_avg),
        "area_error_total_mm2": _fmt(report.area_error_total),
    }


def format_report_text(label: str, report: ErrorReport) -> str:
    """Structured key = value block for one error report."""
    row = report_row(label, report)
    return "\n".join(f"{k} = {v}" for k, v in row.items()) + "\n"


def write_report_csv(path: str | Path, rows: list[dict[str, str]]) -> None:
    lines = [",".join(REPORT_COLUMNS)]
    for row in rows:
        lines.append(",".join(row[c] for c in REPORT_COLUMNS))
    Path(path).write_text("\n".join(lines) + "\n")


def file_digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    """Record of one command invocation, sufficient to re-run it."""

    command: str
    config_hash: str
    inputs: dict[str, str]
    version: str
    timestamp: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "config_hash": self.config_hash,
                "inputs": self.inputs,
                "version": self.version,
                "timestamp": self.timestamp,
            },
            indent=2,
            sort_keys=True,
        )


def write_run_manifest(
    directory: str | Path,
    command: str,
    config_hash: str,
    input_paths: list[str | Path],
) -> Path:
    """Write run_manifest.json next to a command's outputs."""
    from . import __version__

    manifest = RunManifest(
        command=command,
        config_hash=config_hash,
        inputs={str(p): file_digest(p) for p in input_paths},
        version=__version__,
        timestamp=time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    )
    out = Path(directory) / "run_manifest.json"
    out.write_text(manifest.to_json() + "\n")
    return out
