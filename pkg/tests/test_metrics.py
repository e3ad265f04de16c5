import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibershape import (
    CurvatureProfile,
    PlanarShape,
    StrainProfile,
    area_error,
    average_radius,
    custom_ground_truth,
    integrate_shape,
    make_ground_truth,
    score_reconstruction,
    shape_error,
    tip_position_error,
)
from fibershape.errors import (
    GeometryWarning,
    InvalidSpecError,
    SpanMismatchError,
    UndefinedRadiusError,
)


def straight_shape(length, n, y=0.0):
    s = np.linspace(0.0, length, n)
    pts = np.column_stack([s, np.full_like(s, y)])
    return PlanarShape(pts, np.zeros_like(s), s)


def random_walk_shape(seed, n=60):
    rng = np.random.default_rng(seed)
    kappa = rng.uniform(-0.02, 0.02, n)
    return integrate_shape(CurvatureProfile(1.3 * np.arange(n), kappa))


class TestMakeGroundTruth:
    def test_half_circle_endpoint(self):
        truth = make_ground_truth("c_shape", 60.0, math.pi * 60.0)
        assert truth.shape.tip == pytest.approx([0.0, 120.0], abs=1e-9)

    def test_quarter_circle_endpoint(self):
        truth = make_ground_truth("c_shape", 100.0, math.pi / 2 * 100.0)
        assert truth.shape.tip == pytest.approx([100.0, 100.0], abs=1e-9)

    def test_j_shape_endpoint(self):
        # 50 mm straight run then a 100 mm arc on a 100 mm radius:
        # (50 + 100 sin 1, 100 (1 - cos 1))
        truth = make_ground_truth("j_shape", 100.0, 150.0, straight_length=50.0)
        assert truth.shape.tip == pytest.approx(
            [134.14709848078965, 45.96976941318602], abs=1e-9
        )

    def test_j_shape_heading_profile(self):
        truth = make_ground_truth("j_shape", 100.0, 150.0)
        assert truth.heading_at(np.array([0.0, 25.0, 50.0])) == pytest.approx(0.0)
        assert truth.heading_at(150.0) == pytest.approx(1.0, rel=1e-12)

    def test_overlong_arc_is_flagged_not_an_error(self):
        with pytest.warns(GeometryWarning):
            truth = make_ground_truth("c_shape", 10.0, 100.0)
        assert truth.total_length == 100.0

    @pytest.mark.parametrize("kwargs", [
        {"kind": "s_shape", "radius": 100.0, "total_length": 100.0},
        {"kind": "c_shape", "radius": -1.0, "total_length": 100.0},
        {"kind": "c_shape", "radius": 100.0, "total_length": 0.0},
        {"kind": "j_shape", "radius": 100.0, "total_length": 40.0},
    ])
    def test_invalid_parameters(self, kwargs):
        with pytest.raises(InvalidSpecError):
            make_ground_truth(**kwargs)


class TestTipAndShapeError:
    def test_zero_for_identical_curves(self):
        shape = random_walk_shape(1)
        truth = custom_ground_truth(shape)
        assert tip_position_error(shape, truth) < 1e-9
        assert shape_error(shape, truth) < 1e-9

    def test_translation_is_measured_exactly(self):
        truth = make_ground_truth("c_shape", 100.0, 170.0)
        recon = truth.shape.translated(3.0, 4.0)
        assert tip_position_error(recon, truth) == pytest.approx(5.0, abs=1e-12)
        assert shape_error(recon, truth) == pytest.approx(5.0, abs=1e-12)

    def test_rigid_motion_of_both_curves_is_invisible(self):
        base = random_walk_shape(2)
        moved = base.transformed(12.0, -8.0, 0.9)
        recon = random_walk_shape(3)
        recon_moved = recon.transformed(12.0, -8.0, 0.9)
        t1 = tip_position_error(recon, custom_ground_truth(base))
        t2 = tip_position_error(recon_moved, custom_ground_truth(moved))
        s1 = shape_error(recon, custom_ground_truth(base))
        s2 = shape_error(recon_moved, custom_ground_truth(moved))
        assert t2 == pytest.approx(t1, rel=1e-9, abs=1e-12)
        assert s2 == pytest.approx(s1, rel=1e-9, abs=1e-12)

    def test_reconstruction_of_exact_curvature_stays_close(self):
        total = 170.0
        n = round(total / 1.3)
        h = total / n
        curv = CurvatureProfile(h * np.arange(n), np.full(n, 0.01))
        recon = integrate_shape(curv)
        truth = make_ground_truth("c_shape", 100.0, total)
        assert shape_error(recon, truth) < 0.05

    def test_longer_reconstruction_is_a_span_mismatch(self):
        truth = make_ground_truth("c_shape", 100.0, 100.0)
        recon = straight_shape(170.0, 131)
        with pytest.raises(SpanMismatchError):
            tip_position_error(recon, truth)
        with pytest.raises(SpanMismatchError):
            shape_error(recon, truth)
        with pytest.raises(SpanMismatchError):
            area_error(recon, truth)

    def test_shorter_reconstruction_trims_the_truth(self):
        truth = make_ground_truth("c_shape", 100.0, 170.0)
        half = 85.0
        n = round(half / 1.3)
        h = half / n
        recon = integrate_shape(CurvatureProfile(h * np.arange(n), np.full(n, 0.01)))
        assert tip_position_error(recon, truth) < 0.05

    def test_grid_refinement_barely_moves_a_converged_error(self):
        total = math.pi / 2 * 100.0
        n = round(total / 1.3)
        h = total / n
        recon = integrate_shape(CurvatureProfile(h * np.arange(n), np.full(n, 0.01)))
        truth = make_ground_truth("c_shape", 100.0, total)
        coarse = shape_error(recon, truth)
        fine = shape_error(recon, truth, grid_points=2 * len(recon))
        assert abs(fine - coarse) < 0.25 * coarse


class TestAreaError:
    def test_zero_for_identical_curves(self):
        shape = random_walk_shape(4)
        avg, total = area_error(shape, custom_ground_truth(shape))
        assert avg < 1e-9 and total < 1e-9

    def test_parallel_offset_lines_make_rectangles(self):
        length, n, d = 130.0, 101, 2.5
        h = length / (n - 1)
        truth = custom_ground_truth(straight_shape(length, n))
        recon = straight_shape(length, n, y=d)
        avg, total = area_error(recon, truth)
        assert avg == pytest.approx(d * h, rel=1e-9)
        assert total == pytest.approx(d * length, rel=1e-9)

    def test_translated_straight_line_area_is_bounded_by_offset_rectangles(self):
        # shearing along the line adds no area: only the 4 mm normal component counts
        length, n = 130.0, 101
        h = length / (n - 1)
        truth = custom_ground_truth(straight_shape(length, n))
        recon = straight_shape(length, n).translated(3.0, 4.0)
        avg, _ = area_error(recon, truth)
        assert avg == pytest.approx(4.0 * h, rel=1e-9)
        assert avg <= 5.0 * h

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10_000))
    def test_total_is_average_times_segment_count(self, seed):
        recon = random_walk_shape(seed)
        truth = custom_ground_truth(random_walk_shape(seed + 1))
        avg, total = area_error(recon, truth)
        assert total == pytest.approx(avg * (len(recon) - 1), rel=1e-12)


class TestAverageRadius:
    def test_constant_curvature(self):
        curv = CurvatureProfile(1.3 * np.arange(50), np.full(50, 1.0 / 80.0))
        assert average_radius(curv) == pytest.approx(80.0, rel=1e-12)

    def test_region_restriction(self):
        pos = np.arange(100.0)
        kappa = np.where(pos < 50.0, 0.01, 0.02)
        curv = CurvatureProfile(pos, kappa)
        assert average_radius(curv, region=(50.0, 99.0)) == pytest.approx(50.0)
        assert average_radius(curv, region=(0.0, 49.0)) == pytest.approx(100.0)

    def test_straight_samples_never_contribute(self):
        pos = np.arange(10.0)
        kappa = np.array([0.0] * 5 + [0.02] * 5)
        assert average_radius(CurvatureProfile(pos, kappa)) == pytest.approx(50.0)

    def test_all_straight_is_undefined(self):
        curv = CurvatureProfile(np.arange(5.0), np.zeros(5))
        with pytest.raises(UndefinedRadiusError):
            average_radius(curv)

    def test_bad_region(self):
        curv = CurvatureProfile(np.arange(5.0), np.full(5, 0.01))
        with pytest.raises(InvalidSpecError):
            average_radius(curv, region=(4.0, 1.0))


class TestScoreReconstruction:
    def test_full_report_on_identical_curves(self):
        total = 170.0
        n = round(total / 1.3)
        h = total / n
        curv = CurvatureProfile(h * np.arange(n), np.full(n, 0.01))
        recon = integrate_shape(curv)
        truth = make_ground_truth("c_shape", 100.0, total)
        strain = StrainProfile(curv.positions, np.full(n, 1464.0))
        report = score_reconstruction(recon, truth, curv=curv, strain=strain)
        assert report.tip_error < 0.05
        assert report.shape_error < 0.05
        assert report.average_radius == pytest.approx(100.0, rel=1e-12)
        assert report.average_strain == pytest.approx(1464.0)

    def test_j_shape_radius_uses_only_the_curved_region(self):
        truth = make_ground_truth("j_shape", 100.0, 150.0)
        n = 115
        h = 150.0 / n
        pos = h * np.arange(n)
        kappa = np.where(pos < 50.0, 0.0, 0.01)
        recon = integrate_shape(CurvatureProfile(pos, kappa))
        report = score_reconstruction(recon, truth)
        assert report.average_radius == pytest.approx(100.0, rel=1e-9)
