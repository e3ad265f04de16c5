"""Core sampled-data types: strain profiles, curvature profiles, planar shapes.

All arc lengths and positions are in mm, strains in microstrain, curvatures
in 1/mm, headings in radians. Instances are frozen; the wrapped numpy arrays
are treated as read-only by convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import InvalidSpecError


def _as_float_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise InvalidSpecError(f"{name} must be one-dimensional, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class StrainProfile:
    """Distributed strain samples indexed by arc length along the fiber.

    ``positions`` are strictly increasing sample locations in mm (nominal
    interrogator spacing 1.3 mm); ``strains`` are the microstrain readings at
    those locations. ``meta`` carries acquisition details such as
    ``rate_hz``, ``sensor_id`` and ``timestamp_s``.
    """

    positions: np.ndarray
    strains: np.ndarray
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        pos = _as_float_array(self.positions, "positions")
        eps = _as_float_array(self.strains, "strains")
        if pos.size == 0:
            raise InvalidSpecError("strain profile needs at least one sample")
        if pos.size != eps.size:
            raise InvalidSpecError(
                f"positions ({pos.size}) and strains ({eps.size}) differ in length"
            )
        if pos.size > 1 and not np.all(np.diff(pos) > 0):
            raise InvalidSpecError("positions must be strictly increasing")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "strains", eps)

    def __len__(self) -> int:
        return self.positions.size

    @property
    def span(self) -> float:
        """Arc length covered by the samples (mm)."""
        return float(self.positions[-1] - self.positions[0])

    @property
    def spacing(self) -> float:
        """Median sample spacing (mm)."""
        if len(self) < 2:
            return 0.0
        return float(np.median(np.diff(self.positions)))

    def window(self, s_lo: float, s_hi: float) -> "StrainProfile":
        """Sub-profile restricted to positions within [s_lo, s_hi]."""
        mask = (self.positions >= s_lo) & (self.positions <= s_hi)
        if not mask.any():
            raise InvalidSpecError(
                f"window [{s_lo}, {s_hi}] mm contains no samples"
            )
        return StrainProfile(self.positions[mask], self.strains[mask], dict(self.meta))


@dataclass(frozen=True)
class CurvatureProfile:
    """Signed curvature samples (1/mm) on the same grid as their source profile."""

    positions: np.ndarray
    curvatures: np.ndarray

    def __post_init__(self):
        pos = _as_float_array(self.positions, "positions")
        kap = _as_float_array(self.curvatures, "curvatures")
        if pos.size == 0:
            raise InvalidSpecError("curvature profile needs at least one sample")
        if pos.size != kap.size:
            raise InvalidSpecError(
                f"positions ({pos.size}) and curvatures ({kap.size}) differ in length"
            )
        if pos.size > 1 and not np.all(np.diff(pos) > 0):
            raise InvalidSpecError("positions must be strictly increasing")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "curvatures", kap)

    def __len__(self) -> int:
        return self.positions.size

    @property
    def span(self) -> float:
        return float(self.positions[-1] - self.positions[0])

    def max_abs_curvature(self) -> float:
        return float(np.max(np.abs(self.curvatures)))


@dataclass(frozen=True)
class PlanarShape:
    """Ordered planar polyline with headings and cumulative arc length.

    ``points`` is an (N, 2) array of x/y coordinates in mm, ``headings``
    the tangent angle at each point (rad), ``arc_lengths`` the cumulative
    arc length in mm (strictly increasing, typically starting at 0).
    """

    points: np.ndarray
    headings: np.ndarray
    arc_lengths: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise InvalidSpecError(f"points must have shape (N, 2), got {pts.shape}")
        th = _as_float_array(self.headings, "headings")
        s = _as_float_array(self.arc_lengths, "arc_lengths")
        if not (pts.shape[0] == th.size == s.size):
            raise InvalidSpecError("points, headings and arc_lengths differ in length")
        if pts.shape[0] == 0:
            raise InvalidSpecError("shape needs at least one point")
        if s.size > 1 and not np.all(np.diff(s) > 0):
            raise InvalidSpecError("arc_lengths must be strictly increasing")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "headings", th)
        object.__setattr__(self, "arc_lengths", s)

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def tip(self) -> np.ndarray:
        """Final point of the polyline."""
        return self.points[-1]

    @property
    def span(self) -> float:
        """Arc length covered by the polyline (mm)."""
        return float(self.arc_lengths[-1] - self.arc_lengths[0])

    def translated(self, dx: float, dy: float) -> "PlanarShape":
        """Copy of the shape rigidly translated by (dx, dy)."""
        return PlanarShape(
            self.points + np.array([dx, dy]), self.headings.copy(), self.arc_lengths.copy()
        )

    def transformed(self, dx: float, dy: float, dtheta: float) -> "PlanarShape":
        """Copy rotated by dtheta about the origin, then translated by (dx, dy)."""
        c, s = np.cos(dtheta), np.sin(dtheta)
        rot = np.array([[c, -s], [s, c]])
        return PlanarShape(
            self.points @ rot.T + np.array([dx, dy]),
            self.headings + dtheta,
            self.arc_lengths.copy(),
        )
