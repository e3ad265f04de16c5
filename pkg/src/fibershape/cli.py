"""Command-line interface.

Subcommands: design, calibrate, simulate, reconstruct, evaluate, pipeline.
The default config path can be set with the FIBERSHAPE_CONFIG environment
variable; any explicit --config wins.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .beam import design_search
from .calibration import calibrate_slots
from .config import ToolkitConfig, config_hash, default_config, load_config
from .errors import ToolkitError
from .fileio import (
    format_report_text,
    read_model_file,
    read_shape_csv,
    read_strain_csv,
    report_row,
    write_model_file,
    write_report_csv,
    write_shape_csv,
    write_strain_csv,
    write_run_manifest,
)
from .metrics import custom_ground_truth, make_ground_truth, score_reconstruction
from .pipeline import (
    load_calibration_manifest,
    load_trials_manifest,
    run_pipeline,
)
from .reconstruction import integrate_shape, resample_profile, strains_to_curvatures
from .synthesis import SensorModel, bias_presets, strain_from_truth, stream_frames

CONFIG_ENV = "FIBERSHAPE_CONFIG"


def _load_config(args) -> ToolkitConfig:
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    if path:
        return load_config(path)
    return default_config()


def _parse_bias(raw: str) -> float:
    presets = bias_presets()
    if raw in presets:
        return presets[raw]
    return float(raw)


def _truth_from_args(args, cfg: ToolkitConfig):
    if getattr(args, "truth_csv", None):
        return custom_ground_truth(read_shape_csv(args.truth_csv))
    kind = args.kind or cfg.experiment_kind
    radius = args.radius if args.radius is not None else cfg.experiment_radius_mm
    length = args.length if args.length is not None else cfg.experiment_length_mm
    straight = args.straight if args.straight is not None else cfg.experiment_straight_mm
    return make_ground_truth(
        kind, radius, length,
        spacing=cfg.sensor_resolution_mm, straight_length=straight,
    )


def cmd_design(args) -> int:
    cfg = _load_config(args)
    fiber = cfg.fiber_spec()
    candidates = design_search(
        fiber,
        width_range=(args.width_min, args.width_max),
        height_range=(args.height_min, args.height_max),
        step=args.step,
        channel=cfg.channel(),
        wire_modulus=cfg.wire_modulus_gpa,
    )
    if args.channel_only:
        candidates = [c for c in candidates if c.fits_channel]
    if args.limit > 0:
        candidates = candidates[: args.limit]
    lines = ["width_mm,height_mm,bias_mm,min_bend_radius_mm,fits_channel"]
    for c in candidates:
        lines.append(
            f"{c.wire.width:.6g},{c.wire.height:.6g},{c.bias:.15g},"
            f"{c.min_bend_radius:.15g},{str(c.fits_channel).lower()}"
        )
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_calibrate(args) -> int:
    cfg = _load_config(args)
    window = (cfg.jig_window_start_mm, cfg.jig_window_end_mm)
    slots = load_calibration_manifest(args.data, default_window=window)
    result = calibrate_slots(slots)
    write_model_file(args.output, result)
    if args.plot:
        from .plots import plot_calibration

        plot_calibration(result.points, result.model, args.plot)
    # slot summary; curvature shown in both 1/mm and 1/m for jig comparability
    print("radius_mm,curvature_per_mm,curvature_per_m,mean_strain_ue")
    for eps, rho in result.points:
        print(f"{rho:.6g},{1.0 / rho:.8g},{1000.0 / rho:.6g},{eps:.10g}")
    print(
        f"model: a = {result.model.coefficient:.10g}, b = {result.model.exponent:.8g}, "
        f"residual_rms = {result.residual_rms:.3g}"
    )
    if result.straight_noise_ue is not None:
        print(f"straight-slot noise: {result.straight_noise_ue:.4g} ue")
    return 0


def cmd_simulate(args) -> int:
    cfg = _load_config(args)
    truth = _truth_from_args(args, cfg)
    sensor = SensorModel(
        bias=_parse_bias(args.bias) if args.bias else cfg.sensor_bias_mm,
        spatial_resolution=args.resolution or cfg.sensor_resolution_mm,
        noise_sigma=args.noise if args.noise is not None else cfg.sensor_noise_sigma_ue,
        seed=args.seed if args.seed is not None else cfg.sensor_seed,
    )
    if args.frames > 1:
        stream = stream_frames([truth] * args.frames, sensor, rate=args.rate or cfg.sensor_rate_hz)
        out_dir = Path(args.output)
        out_dir.mkdir(parents=True, exist_ok=True)
        for i, frame in enumerate(stream.frames):
            write_strain_csv(out_dir / f"frame_{i:04d}.csv", frame)
        write_run_manifest(out_dir, "simulate", config_hash(cfg), [])
        print(f"wrote {len(stream)} frames to {out_dir}")
    else:
        profile = strain_from_truth(truth, sensor)
        write_strain_csv(args.output, profile)
        print(f"wrote {len(profile)} samples to {args.output}")
    return 0


def cmd_reconstruct(args) -> int:
    calibration = read_model_file(args.model)
    profile = read_strain_csv(args.input)
    if args.spacing:
        profile = resample_profile(profile, args.spacing)
    threshold = (
        calibration.default_threshold() if args.threshold is None else args.threshold
    )
    curv = strains_to_curvatures(
        calibration.model, profile, straight_threshold=threshold, sign=args.sign
    )
    shape = integrate_shape(curv, scheme=args.scheme)
    write_shape_csv(args.output, shape)
    if not args.no_plot:
        from .plots import plot_shape

        figure = args.plot or Path(args.output).with_suffix(".svg")
        plot_shape(shape, figure, title=Path(args.input).stem)
    print(f"wrote {len(shape)} points to {args.output}")
    return 0


def cmd_evaluate(args) -> int:
    cfg = _load_config(args)
    shape = read_shape_csv(args.input)
    truth = _truth_from_args(args, cfg)
    strain = read_strain_csv(args.strain) if args.strain else None
    report = score_reconstruction(shape, truth, strain=strain)
    label = args.label or Path(args.input).stem
    sys.stdout.write(format_report_text(label, report))
    if args.row_csv:
        write_report_csv(args.row_csv, [report_row(label, report)])
    if args.emit_overlay:
        from .plots import plot_overlay

        plot_overlay(shape, truth, args.emit_overlay, report=report)
    return 0


def cmd_pipeline(args) -> int:
    cfg = _load_config(args)
    trials = load_trials_manifest(args.trials)
    slots = None
    if args.calibration:
        window = (cfg.jig_window_start_mm, cfg.jig_window_end_mm)
        slots = load_calibration_manifest(args.calibration, default_window=window)
    results = run_pipeline(
        cfg,
        trials,
        model_file=args.model,
        calibration_slots=slots,
        out_dir=args.out,
        threshold_ue=args.threshold,
        make_plots=not args.no_plots,
    )
    for label, report in results:
        sys.stdout.write(format_report_text(label, report))
        sys.stdout.write("\n")
    print(f"artifacts in {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibershape",
        description="Single-fiber distributed-strain shape sensing toolkit.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="sweep wire sizes and rank by sensitivity")
    p.add_argument("--config")
    p.add_argument("--width-min", type=float, default=0.5)
    p.add_argument("--width-max", type=float, default=1.0)
    p.add_argument("--height-min", type=float, default=0.0)
    p.add_argument("--height-max", type=float, default=0.5)
    p.add_argument("--step", type=float, default=0.001)
    p.add_argument("--limit", type=int, default=25, help="rows to emit (0 = all)")
    p.add_argument("--channel-only", action="store_true")
    p.add_argument("--output", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("calibrate", help="fit the strain-to-radius power law")
    p.add_argument("--config")
    p.add_argument("--data", required=True,
                   help="manifest CSV: radius_mm,path,window_start_mm,window_end_mm")
    p.add_argument("--output", required=True, help="model file to write")
    p.add_argument("--plot", help="write the fit figure here (e.g. fit.svg)")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("simulate", help="synthesize strain data from a known shape")
    p.add_argument("--config")
    p.add_argument("--kind", choices=("c_shape", "j_shape"))
    p.add_argument("--radius", type=float)
    p.add_argument("--length", type=float)
    p.add_argument("--straight", type=float)
    p.add_argument("--truth-csv", help="use this shape CSV as the truth instead")
    p.add_argument("--bias", help="sensor bias in mm, or one of: "
                                  "effective, transformed_section, reported")
    p.add_argument("--resolution", type=float)
    p.add_argument("--noise", type=float, help="noise sigma in microstrain")
    p.add_argument("--seed", type=int)
    p.add_argument("--frames", type=int, default=1)
    p.add_argument("--rate", type=float, help="frame rate in Hz")
    p.add_argument("--output", required=True,
                   help="strain CSV (or directory when --frames > 1)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reconstruct", help="strain CSV -> shape CSV (+ figure)")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--plot", help="polyline figure path (default: the output with .svg)")
    p.add_argument("--no-plot", action="store_true")
    p.add_argument("--spacing", type=float, help="resample to this spacing first (mm)")
    p.add_argument("--threshold", type=float,
                   help="straight threshold in microstrain (default 3x straight noise)")
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)
    p.add_argument("--scheme", choices=("midpoint", "euler"), default="midpoint")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("evaluate", help="score a shape CSV against ground truth")
    p.add_argument("--config")
    p.add_argument("--input", required=True, help="reconstructed shape CSV")
    p.add_argument("--kind", choices=("c_shape", "j_shape"))
    p.add_argument("--radius", type=float)
    p.add_argument("--length", type=float)
    p.add_argument("--straight", type=float)
    p.add_argument("--truth-csv")
    p.add_argument("--strain", help="source strain CSV for the average-strain column")
    p.add_argument("--label")
    p.add_argument("--row-csv", help="also write the report as a one-row CSV table")
    p.add_argument("--emit-overlay", help="write the overlay figure here (e.g. overlay.svg)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("pipeline", help="calibrate, reconstruct and evaluate trials")
    p.add_argument("--config")
    p.add_argument("--trials", required=True,
                   help="manifest CSV: label,kind,radius_mm,length_mm,straight_mm,path")
    p.add_argument("--model", help="existing calibration model file")
    p.add_argument("--calibration", help="calibration manifest CSV")
    p.add_argument("--out", default="out")
    p.add_argument("--threshold", type=float)
    p.add_argument("--no-plots", action="store_true")
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
