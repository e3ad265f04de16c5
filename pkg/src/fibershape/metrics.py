"""Ground-truth jig shapes and reconstruction error metrics.

Reconstructions are scored against the known slot geometry with four
numbers: tip position error (endpoint distance), shape error (mean
pointwise distance at matching arc lengths), average/total area between the
curves (per-segment quadrilaterals), and the average bend radius. Point
correspondence is always by arc length, never nearest-point projection.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    GeometryWarning,
    InvalidSpecError,
    SpanMismatchError,
    UndefinedRadiusError,
)
from .profiles import CurvatureProfile, PlanarShape, StrainProfile
from .reconstruction import curvature_from_shape

GROUND_TRUTH_KINDS = ("c_shape", "j_shape", "custom")

# Arc length of the straight run leading into a J slot (mm).
DEFAULT_J_STRAIGHT_MM = 50.0

# Default sampling of generated truth polylines; matches the interrogator grid.
DEFAULT_TRUTH_SPACING_MM = 1.3

# Two arc spans are considered "the same" within this slack (mm).
DEFAULT_SPAN_TOL_MM = 1e-6


@dataclass(frozen=True)
class GroundTruth:
    """Known slot geometry: a sampled polyline plus its constructive parameters.

    kind is "c_shape" (single circular arc), "j_shape" (straight run joined
    tangentially to an arc) or "custom" (arbitrary supplied polyline).
    radius is the arc radius in mm (None for custom shapes).
    """

    kind: str
    radius: float | None
    straight_length: float
    total_length: float
    shape: PlanarShape

    def __post_init__(self):
        if self.kind not in GROUND_TRUTH_KINDS:
            raise InvalidSpecError(
                f"kind must be one of {GROUND_TRUTH_KINDS}, got {self.kind!r}"
            )

    def heading_at(self, s) -> np.ndarray:
        """Tangent heading at arc length s (analytic for c/j, interpolated for custom)."""
        s = np.asarray(s, dtype=float)
        if self.kind == "c_shape":
            return s / self.radius
        if self.kind == "j_shape":
            return np.maximum(0.0, s - self.straight_length) / self.radius
        return np.interp(s, self.shape.arc_lengths, self.shape.headings)


@dataclass(frozen=True)
class ErrorReport:
    """Scores for one reconstruction trial.

    Lengths in mm, areas in mm^2, strain in microstrain. average_strain is
    None when no source strain profile was supplied.
    """

    tip_error: float
    shape_error: float
    area_error_avg: float
    area_error_total: float
    average_radius: float
    average_strain: float | None = None

    def __post_init__(self):
        for name in ("tip_error", "shape_error", "area_error_avg",
                     "area_error_total", "average_radius"):
            if getattr(self, name) < 0:
                raise InvalidSpecError(f"{name} must be nonnegative")


def _arc_pose(s: np.ndarray, radius: float, straight: float):
    """Analytic pose along a straight run of length `straight` followed by an arc."""
    t = np.maximum(0.0, s - straight)
    base = np.minimum(s, straight)
    theta = t / radius
    x = base + radius * np.sin(theta)
    y = radius * (1.0 - np.cos(theta))
    return x, y, theta


def make_ground_truth(
    kind: str,
    radius: float,
    total_length: float,
    spacing: float = DEFAULT_TRUTH_SPACING_MM,
    straight_length: float = DEFAULT_J_STRAIGHT_MM,
) -> GroundTruth:
    """Build a C- or J-slot ground truth sampled at the given spacing.

    The shape starts at the origin with heading 0. A C shape is a single
    arc of the given radius; a J shape is a straight segment followed
    tangentially by the arc. An arc sweeping more than a full circle is
    flagged with a GeometryWarning but still generated.
    """
    if kind not in ("c_shape", "j_shape"):
        raise InvalidSpecError(f"kind must be c_shape or j_shape, got {kind!r}")
    if radius <= 0:
        raise InvalidSpecError(f"radius must be positive, got {radius}")
    if total_length <= 0:
        raise InvalidSpecError(f"total length must be positive, got {total_length}")
    if spacing <= 0:
        raise InvalidSpecError(f"spacing must be positive, got {spacing}")
    if kind == "j_shape":
        if straight_length <= 0:
            raise InvalidSpecError(
                f"straight length must be positive, got {straight_length}"
            )
        if total_length <= straight_length:
            raise InvalidSpecError(
                "J-shape total length must exceed its straight segment"
            )
        straight = straight_length
    else:
        straight = 0.0

    arc_len = total_length - straight
    if arc_len > 2 * math.pi * radius:
        warnings.warn(
            f"arc length {arc_len:.3f} mm exceeds the full circle "
            f"{2 * math.pi * radius:.3f} mm",
            GeometryWarning,
            stacklevel=2,
        )

    n = max(1, int(round(total_length / spacing)))
    s = np.linspace(0.0, total_length, n + 1)
    x, y, theta = _arc_pose(s, radius, straight)
    shape = PlanarShape(np.column_stack([x, y]), theta, s)
    return GroundTruth(
        kind=kind,
        radius=radius,
        straight_length=straight,
        total_length=total_length,
        shape=shape,
    )


def custom_ground_truth(shape: PlanarShape) -> GroundTruth:
    """Wrap an arbitrary polyline as ground truth."""
    return GroundTruth(
        kind="custom",
        radius=None,
        straight_length=0.0,
        total_length=shape.span,
        shape=shape,
    )


def _interp_points(shape: PlanarShape, s: np.ndarray) -> np.ndarray:
    """Polyline points at the given arc lengths (relative to the shape start)."""
    s_abs = shape.arc_lengths[0] + s
    x = np.interp(s_abs, shape.arc_lengths, shape.points[:, 0])
    y = np.interp(s_abs, shape.arc_lengths, shape.points[:, 1])
    return np.column_stack([x, y])


def _check_span(recon: PlanarShape, truth: GroundTruth, span_tol: float) -> float:
    span = recon.span
    if span > truth.total_length + span_tol:
        raise SpanMismatchError(
            f"reconstruction spans {span:.6g} mm but the truth only "
            f"{truth.total_length:.6g} mm"
        )
    return min(span, truth.total_length)


def tip_position_error(
    recon: PlanarShape,
    truth: GroundTruth,
    span_tol: float = DEFAULT_SPAN_TOL_MM,
) -> float:
    """Euclidean distance between the reconstruction tip and the expected tip.

    The truth is trimmed to the reconstruction's arc-length span before
    comparison; a reconstruction longer than the truth (beyond span_tol) is
    a span mismatch.
    """
    span = _check_span(recon, truth, span_tol)
    expected = _interp_points(truth.shape, np.array([span]))[0]
    return float(np.hypot(*(recon.tip - expected)))


def shape_error(
    recon: PlanarShape,
    truth: GroundTruth,
    span_tol: float = DEFAULT_SPAN_TOL_MM,
    grid_points: int | None = None,
) -> float:
    """Mean pointwise distance between the curves at matching arc lengths.

    Both curves are resampled onto a common uniform arc-length grid over the
    reconstruction's span (grid size defaults to the reconstruction's point
    count).
    """
    span = _check_span(recon, truth, span_tol)
    n = grid_points if grid_points is not None else len(recon)
    grid = np.linspace(0.0, span, n)
    r = _interp_points(recon, grid)
    t = _interp_points(truth.shape, grid)
    return float(np.hypot(r[:, 0] - t[:, 0], r[:, 1] - t[:, 1]).mean())


def area_error(
    recon: PlanarShape,
    truth: GroundTruth,
    span_tol: float = DEFAULT_SPAN_TOL_MM,
    grid_points: int | None = None,
) -> tuple[float, float]:
    """Average and total area enclosed between the curves (mm^2).

    On the common uniform grid, each consecutive pair of arc lengths forms
    a quadrilateral (recon_i, recon_i+1, truth_i+1, truth_i) whose area is
    taken from the shoelace formula. Returns (mean, sum) over segments; an
    ideal reconstruction yields zero area.
    """
    span = _check_span(recon, truth, span_tol)
    n = grid_points if grid_points is not None else len(recon)
    grid = np.linspace(0.0, span, n)
    r = _interp_points(recon, grid)
    t = _interp_points(truth.shape, grid)

    # shoelace over quads (r_i, r_{i+1}, t_{i+1}, t_i), vectorized
    xs = np.stack([r[:-1, 0], r[1:, 0], t[1:, 0], t[:-1, 0]])
    ys = np.stack([r[:-1, 1], r[1:, 1], t[1:, 1], t[:-1, 1]])
    xs_next = np.roll(xs, -1, axis=0)
    ys_next = np.roll(ys, -1, axis=0)
    areas = 0.5 * np.abs(np.sum(xs * ys_next - xs_next * ys, axis=0))
    return float(areas.mean()), float(areas.sum())


def average_radius(
    curv: CurvatureProfile,
    region: tuple[float, float] | None = None,
) -> float:
    """Mean of 1/|kappa| over the bent samples in the given arc-length window.

    region defaults to the full profile. For J shapes restrict it to the
    curved portion; straight (zero curvature) samples never contribute.
    """
    pos = curv.positions
    kappa = curv.curvatures
    if region is not None:
        lo, hi = region
        if lo > hi:
            raise InvalidSpecError(f"region must satisfy lo <= hi, got {region}")
        mask = (pos >= lo) & (pos <= hi)
    else:
        mask = np.ones_like(pos, dtype=bool)
    mask &= kappa != 0
    if not mask.any():
        raise UndefinedRadiusError("no bent samples in the region; radius undefined")
    return float(np.mean(1.0 / np.abs(kappa[mask])))


def profile_average_strain(profile: StrainProfile) -> float:
    """Mean strain magnitude over the profile (microstrain)."""
    return float(np.abs(profile.strains).mean())


def score_reconstruction(
    recon: PlanarShape,
    truth: GroundTruth,
    curv: CurvatureProfile | None = None,
    strain: StrainProfile | None = None,
    radius_region: tuple[float, float] | None = None,
    span_tol: float = DEFAULT_SPAN_TOL_MM,
) -> ErrorReport:
    """Compute the full error report for one trial.

    When no curvature profile is supplied it is recovered from the
    reconstructed headings. radius_region defaults to the curved portion
    for J-shape truths and the full span otherwise.
    """
    if curv is None:
        curv = curvature_from_shape(recon)
    if radius_region is None and truth.kind == "j_shape":
        radius_region = (truth.straight_length, truth.total_length)
    avg, total = area_error(recon, truth, span_tol=span_tol)
    return ErrorReport(
        tip_error=tip_position_error(recon, truth, span_tol=span_tol),
        shape_error=shape_error(recon, truth, span_tol=span_tol),
        area_error_avg=avg,
        area_error_total=total,
        average_radius=average_radius(curv, radius_region),
        average_strain=None if strain is None else profile_average_strain(strain),
    )
