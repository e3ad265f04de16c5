"""Composite-beam analysis of the fiber-on-flat-wire sensing assembly.

The assembly is a single optical fiber glued along the top face of a flat
rectangular wire. When the pair bends, the axial strain seen by the fiber
core is proportional to its distance from the neutral plane of the combined
cross-section, so the geometry alone fixes the strain sensitivity (bias)
and the tightest bend the fiber survives.

Conventions: heights are measured from the bottom face of the wire, in mm.
The wire centroid sits at height/2, the fiber centroid at height + radius
(fiber resting centered on top of the wire). Young's moduli enter the
neutral-plane computation only through their ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpecError

# Production values: HD polyimide-coated sensing fiber on a flat NiTi wire.
DEFAULT_FIBER_RADIUS_MM = 0.0775
DEFAULT_FIBER_MODULUS_GPA = 4.81
DEFAULT_FIBER_MAX_STRAIN = 0.01
DEFAULT_WIRE_WIDTH_MM = 0.813
DEFAULT_WIRE_HEIGHT_MM = 0.152
DEFAULT_WIRE_MODULUS_GPA = 75.0

# Rectangular channel that must accommodate the assembly (width, height), mm.
DEFAULT_CHANNEL_MM = (1.2, 0.6)

# Default wire sweep explored by design_search (mm).
DEFAULT_WIDTH_RANGE_MM = (0.5, 1.0)
DEFAULT_HEIGHT_RANGE_MM = (0.0, 0.5)
DEFAULT_SWEEP_STEP_MM = 0.001

# Bias previously reported for the production assembly. The transformed-
# section analysis below yields ~0.152 mm for the same geometry and does not
# reproduce this number; it is kept only as a labeled reference value.
REPORTED_ASSEMBLY_BIAS_MM = 0.079


@dataclass(frozen=True)
class FiberSpec:
    """Optical fiber cross-section and strain limit.

    radius in mm, young_modulus in GPa, max_strain as a dimensionless
    fraction (e.g. 0.01 for a 1% strain limit).
    """

    radius: float = DEFAULT_FIBER_RADIUS_MM
    young_modulus: float = DEFAULT_FIBER_MODULUS_GPA
    max_strain: float = DEFAULT_FIBER_MAX_STRAIN

    def __post_init__(self):
        if self.radius <= 0:
            raise InvalidSpecError(f"fiber radius must be positive, got {self.radius}")
        if self.young_modulus <= 0:
            raise InvalidSpecError(
                f"fiber modulus must be positive, got {self.young_modulus}"
            )
        if not 0 < self.max_strain < 1:
            raise InvalidSpecError(
                f"fiber max_strain must be in (0, 1), got {self.max_strain}"
            )

    @property
    def area(self) -> float:
        """Cross-section area (mm^2)."""
        return math.pi * self.radius**2


@dataclass(frozen=True)
class WireSpec:
    """Flat rectangular wire cross-section: width x height in mm, modulus in GPa.

    height may be zero, which degenerates to a bare fiber.
    """

    width: float = DEFAULT_WIRE_WIDTH_MM
    height: float = DEFAULT_WIRE_HEIGHT_MM
    young_modulus: float = DEFAULT_WIRE_MODULUS_GPA

    def __post_init__(self):
        if self.width <= 0:
            raise InvalidSpecError(f"wire width must be positive, got {self.width}")
        if self.height < 0:
            raise InvalidSpecError(f"wire height must be nonnegative, got {self.height}")
        if self.young_modulus <= 0:
            raise InvalidSpecError(
                f"wire modulus must be positive, got {self.young_modulus}"
            )

    @property
    def area(self) -> float:
        """Cross-section area (mm^2)."""
        return self.width * self.height


@dataclass(frozen=True)
class SSAGeometry:
    """Derived geometry of one assembly: neutral plane, bias, bend limit.

    neutral_plane and bias are measured in mm from the wire bottom face;
    min_bend_radius is the tightest tolerable bend radius in mm.
    """

    fiber: FiberSpec
    wire: WireSpec
    neutral_plane: float
    bias: float
    min_bend_radius: float

    def __post_init__(self):
        top = self.wire.height + 2 * self.fiber.radius
        if not 0 <= self.neutral_plane <= top:
            raise InvalidSpecError(
                f"neutral plane {self.neutral_plane} mm outside section [0, {top}] mm"
            )
        if self.bias < 0:
            raise InvalidSpecError(f"bias must be nonnegative, got {self.bias}")
        if self.min_bend_radius <= 0:
            raise InvalidSpecError(
                f"min bend radius must be positive, got {self.min_bend_radius}"
            )

    @property
    def fiber_centroid(self) -> float:
        """Height of the fiber centroid above the wire bottom face (mm)."""
        return self.wire.height + self.fiber.radius


@dataclass(frozen=True)
class DesignCandidate:
    """One wire size from a design sweep, annotated with its figures of merit."""

    wire: WireSpec
    bias: float
    min_bend_radius: float
    fits_channel: bool


def neutral_plane(wire: WireSpec, fiber: FiberSpec) -> float:
    """Height of the combined neutral plane above the wire bottom face (mm).

    Transformed-section centroid: each cross-section area is weighted by its
    modulus ratio n_j = E_j / E_fiber and the centroid heights are averaged,

        Ybar = sum_j n_j A_j y_j / sum_j n_j A_j,   j in {wire, fiber}.

    The result lies between the two centroids; a zero-height wire
    degenerates to the bare fiber centroid.
    """
    n_w = wire.young_modulus / fiber.young_modulus
    a_w = wire.area
    a_f = fiber.area
    y_w = wire.height / 2.0
    y_f = wire.height + fiber.radius
    return (n_w * a_w * y_w + a_f * y_f) / (n_w * a_w + a_f)


def sensor_bias(geometry: SSAGeometry) -> float:
    """Lever arm from the neutral plane to the fiber centroid (mm).

    Positive when the fiber sits above the neutral plane; this is the
    factor converting curvature to fiber strain (strain = bias * curvature).
    """
    return geometry.fiber_centroid - geometry.neutral_plane


def min_bend_radius(fiber: FiberSpec, bias: float) -> float:
    """Tightest bend radius the assembly tolerates (mm).

    At curvature 1/rho the fiber sees strain roughly lever/rho, where the
    lever is the fiber radius for a bare fiber and the bias once mounted;
    whichever is larger reaches the strain limit first.
    """
    if bias < 0:
        raise InvalidSpecError(f"bias must be nonnegative, got {bias}")
    return max(fiber.radius, bias) / fiber.max_strain


def analyze_assembly(fiber: FiberSpec, wire: WireSpec) -> SSAGeometry:
    """Compute the full derived geometry for one fiber/wire pairing."""
    ybar = neutral_plane(wire, fiber)
    bias = (wire.height + fiber.radius) - ybar
    return SSAGeometry(
        fiber=fiber,
        wire=wire,
        neutral_plane=ybar,
        bias=bias,
        min_bend_radius=min_bend_radius(fiber, bias),
    )


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    if hi < lo:
        return np.empty(0)
    n = int(math.floor((hi - lo) / step + 1e-9))
    return lo + step * np.arange(n + 1)


def design_search(
    fiber: FiberSpec,
    width_range: tuple[float, float] = DEFAULT_WIDTH_RANGE_MM,
    height_range: tuple[float, float] = DEFAULT_HEIGHT_RANGE_MM,
    step: float = DEFAULT_SWEEP_STEP_MM,
    channel: tuple[float, float] = DEFAULT_CHANNEL_MM,
    wire_modulus: float = DEFAULT_WIRE_MODULUS_GPA,
) -> list[DesignCandidate]:
    """Sweep wire sizes and rank them by strain sensitivity.

    Evaluates every (width, height) pair on the given grid, computes the
    sensor bias and bend-radius limit, and checks whether the assembly fits
    the channel (width <= channel width and height + fiber diameter <=
    channel height). Candidates are returned sorted by descending bias;
    ties fall back to smaller wire area, then width, then height, so the
    order is a deterministic total order for identical inputs.

    An empty range yields an empty list.
    """
    if step <= 0:
        raise InvalidSpecError(f"sweep step must be positive, got {step}")
    widths = _grid(width_range[0], width_range[1], step)
    heights = _grid(height_range[0], height_range[1], step)
    if widths.size == 0 or heights.size == 0:
        return []

    w_grid, h_grid = np.meshgrid(widths, heights, indexing="ij")
    w_flat = w_grid.ravel()
    h_flat = h_grid.ravel()

    n_w = wire_modulus / fiber.young_modulus
    a_w = w_flat * h_flat
    a_f = fiber.area
    y_w = h_flat / 2.0
    y_f = h_flat + fiber.radius
    ybar = (n_w * a_w * y_w + a_f * y_f) / (n_w * a_w + a_f)
    bias = y_f - ybar
    limit = np.maximum(fiber.radius, bias) / fiber.max_strain
    fits = (w_flat <= channel[0] + 1e-12) & (
        h_flat + 2 * fiber.radius <= channel[1] + 1e-12
    )

    order = sorted(
        range(w_flat.size),
        key=lambda i: (-bias[i], a_w[i], w_flat[i], h_flat[i]),
    )
    return [
        DesignCandidate(
            wire=WireSpec(width=float(w_flat[i]), height=float(h_flat[i]),
                          young_modulus=wire_modulus),
            bias=float(bias[i]),
            min_bend_radius=float(limit[i]),
            fits_channel=bool(fits[i]),
        )
        for i in order
    ]
