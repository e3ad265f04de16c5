"""Acceptance suite: the release gates, one test per criterion.

Each test prints a PASS/FAIL line (run with `pytest -s` to see them all)
and asserts the same condition, so the suite fails loudly if a gate slips.
"""

import math
from time import perf_counter

import numpy as np
import pytest

from fibershape import (
    CurvatureProfile,
    FiberSpec,
    PlanarShape,
    PowerLawModel,
    SensorModel,
    area_error,
    calibrate_slots,
    custom_ground_truth,
    design_search,
    fit_power_law,
    integrate_shape,
    make_ground_truth,
    shape_error,
    strain_from_truth,
    strains_to_curvatures,
    synth_calibration_dataset,
    tip_position_error,
)
from fibershape.beam import REPORTED_ASSEMBLY_BIAS_MM

pytestmark = pytest.mark.filterwarnings(
    "ignore::fibershape.errors.CalibrationDomainWarning"
)

# Reference production calibration: radius_mm = A * strain_ue ** B.
REF_A = 126099.3715
REF_B = -0.97984
JIG_RADII = (100.0, 95.0, 90.0, 85.0, 80.0, 75.0, 70.0, 65.0, 60.0)

# Bench results for the production assembly, by experiment.
# columns: average strain (ue), average radius (mm), tip error (mm),
#          shape error (mm), average area error (mm^2)
C_BENCH = {
    "C1": (1440.649206, 100.871357, 2.097179, 1.166120, 1.476396),
    "C2": (1784.726425, 81.871782, 0.817171, 0.593618, 0.486622),
    "C3": (2397.258935, 61.460192, 1.638290, 0.489858, 1.155276),
}
J_BENCH = {
    "J1": (935.08632, 104.393193, 1.677861, 0.542728, 1.176259),
    "J2": (1176.915874, 83.546379, 1.041806, 0.456734, 0.686597),
    "J3": (1511.251464, 63.81685, 3.36647, 1.135024, 2.31199),
}

EFFECTIVE_BIAS_MM = 0.1464

ZERO_NOISE_CASES = (
    ("C1", "c_shape", 100.0, 170.0),
    ("C2", "c_shape", 80.0, 170.0),
    ("C3", "c_shape", 60.0, 170.0),
    ("J1", "j_shape", 100.0, 150.0),
    ("J2", "j_shape", 80.0, 150.0),
    ("J3", "j_shape", 60.0, 150.0),
)

# Worst-case bench bounds: C from the C table maxima, J from the J table maxima.
NOISE_BOUNDS = {"c_shape": (2.1, 1.2), "j_shape": (3.4, 2.3)}


def _verdict(name: str, ok: bool, detail: str = "") -> bool:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f": {detail}"
    print(line)
    return ok


def test_criterion_1_calibration_round_trip():
    start = perf_counter()
    reference = PowerLawModel(REF_A, REF_B, (1000.0, 3000.0))
    points = [(reference.radius_to_strain(r), r) for r in JIG_RADII]
    fitted = fit_power_law(points)
    elapsed = perf_counter() - start
    rel_a = abs(fitted.coefficient - REF_A) / REF_A
    rel_b = abs(fitted.exponent - REF_B) / abs(REF_B)
    ok = rel_a < 1e-9 and rel_b < 1e-9 and elapsed < 1.0
    assert _verdict(
        "criterion 1 calibration round-trip",
        ok,
        f"rel_a={rel_a:.2e}, rel_b={rel_b:.2e}, {elapsed * 1e3:.0f} ms",
    )


def test_criterion_2_model_matches_bench_radii():
    model = PowerLawModel(REF_A, REF_B, (1000.0, 3000.0))
    gaps = {}
    for label, (strain, radius, *_rest) in C_BENCH.items():
        rho = model.strain_to_radius(strain)
        gaps[label] = abs(rho - radius) / radius
    ok = all(g < 0.01 for g in gaps.values())
    detail = ", ".join(f"{k} {v * 100:.3f}%" for k, v in gaps.items())
    assert _verdict("criterion 2 power-law vs bench radii (<1%)", ok, detail)


def test_criterion_3_effective_bias_consistency():
    c_products = [eps * 1e-6 * rho for eps, rho, *_ in C_BENCH.values()]
    in_band = all(0.145 <= p <= 0.148 for p in c_products)
    c_mean = sum(c_products) / len(c_products)
    # J averages cover the full 150 mm but only 100 mm is bent: scale by 150/100
    j_products = [eps * 1e-6 * rho * 1.5 for eps, rho, *_ in J_BENCH.values()]
    j_gaps = [abs(p - c_mean) / c_mean for p in j_products]
    ok = in_band and all(g < 0.07 for g in j_gaps)
    detail = (
        f"C products {[f'{p:.6f}' for p in c_products]}, "
        f"J gaps {[f'{g * 100:.2f}%' for g in j_gaps]}"
    )
    assert _verdict("criterion 3 effective-bias consistency", ok, detail)


def test_criterion_4_integrator_convergence():
    start = perf_counter()
    total = math.pi / 2 * 100.0  # quarter circle at 100 mm radius
    tip_true = np.array([100.0, 100.0])
    errors = {}
    for spacing in (1.3, 0.65):
        n = max(2, round(total / spacing))
        h = total / n
        curv = CurvatureProfile(h * np.arange(n), np.full(n, 0.01))
        shape = integrate_shape(curv, scheme="midpoint")
        errors[spacing] = float(np.hypot(*(shape.tip - tip_true)))
    elapsed = perf_counter() - start
    ratio = errors[1.3] / errors[0.65]
    ok = errors[1.3] < 0.05 and ratio >= 3.5 and elapsed < 1.0
    assert _verdict(
        "criterion 4 integrator convergence",
        ok,
        f"tip err {errors[1.3]:.2e} mm, halving ratio {ratio:.2f}, {elapsed * 1e3:.0f} ms",
    )


def test_criterion_5_end_to_end_zero_noise_identity():
    start = perf_counter()
    sensor = SensorModel(bias=EFFECTIVE_BIAS_MM)
    calibration = calibrate_slots(synth_calibration_dataset(sensor=sensor))
    worst = {"tip": 0.0, "shape": 0.0, "area": 0.0}
    for label, kind, radius, length in ZERO_NOISE_CASES:
        truth = make_ground_truth(kind, radius, length)
        profile = strain_from_truth(truth, sensor)
        curv = strains_to_curvatures(
            calibration.model, profile,
            straight_threshold=calibration.default_threshold(),
        )
        recon = integrate_shape(curv)
        worst["tip"] = max(worst["tip"], tip_position_error(recon, truth))
        worst["shape"] = max(worst["shape"], shape_error(recon, truth))
        worst["area"] = max(worst["area"], area_error(recon, truth)[0])
    elapsed = perf_counter() - start
    ok = (
        worst["shape"] < 0.05
        and worst["tip"] < 0.1
        and worst["area"] < 0.1
        and elapsed < 5.0
    )
    assert _verdict(
        "criterion 5 end-to-end zero-noise identity (6 cases)",
        ok,
        f"worst tip {worst['tip']:.3e} mm, shape {worst['shape']:.3e} mm, "
        f"area {worst['area']:.3e} mm^2, {elapsed:.2f} s",
    )


def test_criterion_6_noise_stays_inside_bench_bounds():
    n_seeds = 10
    sigma = 20.0
    calibrations = []
    for seed in range(n_seeds):
        cal_sensor = SensorModel(
            bias=EFFECTIVE_BIAS_MM, noise_sigma=sigma, seed=10_000 + seed
        )
        calibrations.append(
            calibrate_slots(synth_calibration_dataset(sensor=cal_sensor))
        )
    all_ok = True
    details = []
    for label, kind, radius, length in ZERO_NOISE_CASES:
        truth = make_ground_truth(kind, radius, length)
        tips, shapes = [], []
        for seed in range(n_seeds):
            sensor = SensorModel(bias=EFFECTIVE_BIAS_MM, noise_sigma=sigma, seed=seed)
            profile = strain_from_truth(truth, sensor)
            calibration = calibrations[seed]
            curv = strains_to_curvatures(
                calibration.model, profile,
                straight_threshold=calibration.default_threshold(),
            )
            recon = integrate_shape(curv)
            tips.append(tip_position_error(recon, truth))
            shapes.append(shape_error(recon, truth))
        tip_bound, shape_bound = NOISE_BOUNDS[kind]
        tip_mean, tip_std = float(np.mean(tips)), float(np.std(tips))
        shape_mean, shape_std = float(np.mean(shapes)), float(np.std(shapes))
        case_ok = tip_mean < tip_bound and shape_mean < shape_bound
        all_ok &= case_ok
        details.append(
            f"{label} tip {tip_mean:.3f}+/-{tip_std:.3f} mm "
            f"shape {shape_mean:.3f}+/-{shape_std:.3f} mm"
        )
    assert _verdict(
        f"criterion 6 noisy bounds (sigma={sigma:g} ue, {n_seeds} seeds)",
        all_ok,
        "; ".join(details),
    )


def test_criterion_7_metric_oracles():
    truth = make_ground_truth("c_shape", 100.0, 170.0)

    identical = truth.shape
    zero_ok = (
        tip_position_error(identical, truth) < 1e-9
        and shape_error(identical, truth) < 1e-9
        and max(area_error(identical, truth)) < 1e-9
    )

    translated = truth.shape.translated(3.0, 4.0)
    tip = tip_position_error(translated, truth)
    shp = shape_error(translated, truth)
    translation_ok = abs(tip - 5.0) < 1e-9 and abs(shp - 5.0) < 1e-9

    length, n, offset = 130.0, 101, 2.5
    spacing = length / (n - 1)
    s = np.linspace(0.0, length, n)
    line = PlanarShape(np.column_stack([s, np.zeros(n)]), np.zeros(n), s)
    straight = custom_ground_truth(line)
    avg, total = area_error(line.translated(0.0, offset), straight)
    area_ok = (
        abs(avg - offset * spacing) / (offset * spacing) < 1e-9
        and abs(total - offset * length) / (offset * length) < 1e-9
    )

    ok = zero_ok and translation_ok and area_ok
    assert _verdict(
        "criterion 7 metric oracles",
        ok,
        f"tip {tip:.12f}, shape {shp:.12f}, area avg {avg:.12f} "
        f"(expected {offset * spacing:.12f})",
    )


def test_criterion_8_design_search_contains_production_wire():
    candidates = design_search(
        FiberSpec(),
        width_range=(0.5, 1.0),
        height_range=(0.0, 0.5),
        step=0.001,
        channel=(1.2, 0.6),
    )
    match = [
        c
        for c in candidates
        if abs(c.wire.width - 0.813) < 1e-6 and abs(c.wire.height - 0.152) < 1e-6
    ]
    found = len(match) == 1
    feasible = found and match[0].fits_channel
    bias = match[0].bias if found else float("nan")
    in_band = found and 0.145 <= bias <= 0.160
    # the historical 0.079 mm figure is not what the transformed-section
    # formula produces for this wire; assert the gap rather than hiding it
    mismatch = found and (
        abs(bias - REPORTED_ASSEMBLY_BIAS_MM) > 0.20 * REPORTED_ASSEMBLY_BIAS_MM
    )
    ok = found and feasible and in_band and mismatch
    assert _verdict(
        "criterion 8 design sweep contains the production wire",
        ok,
        f"found={found}, feasible={feasible}, bias={bias:.6f} mm, "
        f"reported {REPORTED_ASSEMBLY_BIAS_MM} mm differs by "
        f"{abs(bias - REPORTED_ASSEMBLY_BIAS_MM) / REPORTED_ASSEMBLY_BIAS_MM * 100:.0f}%",
    )
