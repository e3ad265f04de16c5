"""End-to-end runs: calibrate, reconstruct and evaluate a batch of trials.

Every run writes, under one output directory: a shape CSV and overlay
figure per trial, the aggregated report table, and a run manifest recording
the config hash and input digests.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .calibration import CalibrationResult, CalibrationSlot, calibrate_slots
from .config import ToolkitConfig, config_hash
from .errors import ConfigError, PipelineError, ToolkitError
from .fileio import (
    read_model_file,
    read_strain_csv,
    report_row,
    write_model_file,
    write_report_csv,
    write_shape_csv,
    write_run_manifest,
)
from .metrics import ErrorReport, GroundTruth, make_ground_truth, score_reconstruction
from .profiles import StrainProfile
from .reconstruction import integrate_shape, strains_to_curvatures


@dataclass(frozen=True)
class TrialSpec:
    """One experiment trial: a strain input paired with its expected shape."""

    label: str
    kind: str
    radius_mm: float
    length_mm: float
    straight_mm: float
    strain_csv: str

    def ground_truth(self, spacing: float) -> GroundTruth:
        return make_ground_truth(
            self.kind,
            self.radius_mm,
            self.length_mm,
            spacing=spacing,
            straight_length=self.straight_mm,
        )


def load_trials_manifest(path: str | Path) -> list[TrialSpec]:
    """Read a trials table: label,kind,radius_mm,length_mm,straight_mm,path."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"trials manifest not found: {path}")
    trials = []
    header_seen = False
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not header_seen:
            header_seen = True
            continue
        parts = [p.strip() for p in stripped.split(",")]
        if len(parts) != 6:
            raise ConfigError(f"{path}:{lineno}: expected 6 columns, got {len(parts)}")
        trials.append(
            TrialSpec(
                label=parts[0],
                kind=parts[1],
                radius_mm=float(parts[2]),
                length_mm=float(parts[3]),
                straight_mm=float(parts[4]) if parts[4] else 0.0,
                strain_csv=str(path.parent / parts[5]),
            )
        )
    if not trials:
        raise ConfigError(f"{path}: no trials listed")
    return trials


def load_calibration_manifest(
    path: str | Path,
    default_window: tuple[float, float] | None = None,
) -> list[CalibrationSlot]:
    """Read a calibration table: radius_mm,path,window_start_mm,window_end_mm.

    Several rows may share a radius (one per trial). Rows with empty window
    fields fall back to default_window (typically the config's jig window)
    or, without one, keep the whole profile.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"calibration manifest not found: {path}")
    by_radius: dict[float, list[StrainProfile]] = {}
    header_seen = False
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if not header_seen:
            header_seen = True
            continue
        parts = [p.strip() for p in stripped.split(",")]
        if len(parts) != 4:
            raise ConfigError(f"{path}:{lineno}: expected 4 columns, got {len(parts)}")
        radius = float(parts[0])
        profile = read_strain_csv(path.parent / parts[1])
        if parts[2] and parts[3]:
            profile = profile.window(float(parts[2]), float(parts[3]))
        elif default_window is not None:
            profile = profile.window(*default_window)
        by_radius.setdefault(radius, []).append(profile)
    if not by_radius:
        raise ConfigError(f"{path}: no calibration rows listed")
    return [
        CalibrationSlot(radius=r, trials=tuple(trials))
        for r, trials in sorted(by_radius.items())
    ]


def _stage(name: str):
    """Decorator-free stage guard: re-raise toolkit errors with stage attribution."""

    class _Guard:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if exc is not None and isinstance(exc, ToolkitError):
                raise PipelineError(f"{name}: {exc}") from exc
            return False

    return _Guard()


def resolve_calibration(
    model_file: str | Path | None = None,
    calibration_slots: list[CalibrationSlot] | None = None,
) -> CalibrationResult:
    """Produce the calibration to reconstruct with, or explain what is missing."""
    if model_file is not None:
        with _stage("calibrate"):
            return read_model_file(model_file)
    if calibration_slots is not None:
        with _stage("calibrate"):
            return calibrate_slots(calibration_slots)
    raise ConfigError(
        "no calibration available: supply a model file or calibration data"
    )


def run_pipeline(
    config: ToolkitConfig,
    trials: list[TrialSpec],
    model_file: str | Path | None = None,
    calibration_slots: list[CalibrationSlot] | None = None,
    out_dir: str | Path = "out",
    threshold_ue: float | None = None,
    make_plots: bool | None = None,
) -> list[tuple[str, ErrorReport]]:
    """Calibrate, then reconstruct and evaluate every trial.

    threshold_ue defaults to 3x the calibration's straight-slot noise.
    Artifacts written per trial: <label>_shape.csv and <label>_overlay.svg;
    per run: model.txt, report.csv, run_manifest.json.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    plots_on = config.output_plots if make_plots is None else make_plots

    calibration = resolve_calibration(model_file, calibration_slots)
    write_model_file(out / "model.txt", calibration)
    threshold = (
        calibration.default_threshold() if threshold_ue is None else threshold_ue
    )

    results: list[tuple[str, ErrorReport]] = []
    rows = []
    input_paths: list[str | Path] = []
    for trial in trials:
        with _stage(f"reconstruct[{trial.label}]"):
            profile = read_strain_csv(trial.strain_csv)
            input_paths.append(trial.strain_csv)
            curv = strains_to_curvatures(
                calibration.model,
                profile,
                straight_threshold=threshold,
                sign=config.experiment_sign,
            )
            shape = integrate_shape(curv, scheme=config.experiment_scheme)
            write_shape_csv(out / f"{trial.label}_shape.csv", shape)
        with _stage(f"evaluate[{trial.label}]"):
            truth = trial.ground_truth(spacing=config.sensor_resolution_mm)
            report = score_reconstruction(
                shape, truth, curv=curv, strain=profile
            )
            results.append((trial.label, report))
            rows.append(report_row(trial.label, report))
            if plots_on:
                from .plots import plot_overlay

                plot_overlay(
                    shape, truth, out / f"{trial.label}_overlay.svg", report=report
                )

    write_report_csv(out / "report.csv", rows)
    if model_file is not None:
        input_paths.append(model_file)
    write_run_manifest(out, "pipeline", config_hash(config), input_paths)
    return results
