"""Planar shape reconstruction from distributed strain.

Pipeline: strain -> curvature through the calibrated power law, then dead
reckoning along arc length. Each curvature sample drives one integration
step; with N samples the shape has N+1 points. Step lengths come from
consecutive sample positions, the final step reusing the last spacing.
"""

from __future__ import annotations

import numpy as np

from .calibration import PowerLawModel
from .errors import DomainError, InsufficientDataError
from .profiles import CurvatureProfile, PlanarShape, StrainProfile

INTEGRATION_SCHEMES = ("midpoint", "euler")


def strains_to_curvatures(
    model: PowerLawModel,
    profile: StrainProfile,
    straight_threshold: float = 0.0,
    sign: int = 1,
) -> CurvatureProfile:
    """Convert a strain profile to signed curvature on the same grid.

    Samples at or below the threshold are treated as straight (zero
    curvature); the rest map to sign / strain_to_radius(strain). The
    threshold guards the power law's divergence at zero strain.
    """
    if straight_threshold < 0:
        raise DomainError(f"straight threshold must be >= 0, got {straight_threshold}")
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    eps = profile.strains
    kappa = np.zeros_like(eps)
    bent = eps > straight_threshold
    if bent.any():
        kappa[bent] = sign / model.strain_to_radius(eps[bent])
    return CurvatureProfile(profile.positions.copy(), kappa)


def integrate_shape(
    curv: CurvatureProfile,
    initial_pose: tuple[float, float, float] = (0.0, 0.0, 0.0),
    scheme: str = "midpoint",
) -> PlanarShape:
    """Integrate curvature into a planar polyline starting at the given pose.

    Heading advances by kappa_i * ds_i per step. The step direction is the
    midpoint heading theta_i + kappa_i * ds_i / 2 (second-order accurate) or,
    with scheme="euler", the start-of-step heading. Each step moves exactly
    ds_i along its chord, so the polyline length equals the input arc length.
    """
    if scheme not in INTEGRATION_SCHEMES:
        raise DomainError(f"unknown scheme {scheme!r}, expected one of {INTEGRATION_SCHEMES}")
    if len(curv) < 2:
        raise InsufficientDataError("need at least 2 curvature samples to integrate")

    kappa = curv.curvatures
    ds = np.diff(curv.positions)
    ds = np.append(ds, ds[-1])  # final sample drives one more step of the last spacing

    x0, y0, theta0 = initial_pose
    dtheta = kappa * ds
    theta = theta0 + np.concatenate([[0.0], np.cumsum(dtheta)])
    theta_step = theta[:-1] + (0.5 * dtheta if scheme == "midpoint" else 0.0)

    x = x0 + np.concatenate([[0.0], np.cumsum(np.cos(theta_step) * ds)])
    y = y0 + np.concatenate([[0.0], np.cumsum(np.sin(theta_step) * ds)])
    arc = np.concatenate([[0.0], np.cumsum(ds)])
    return PlanarShape(np.column_stack([x, y]), theta, arc)


def curvature_from_shape(shape: PlanarShape) -> CurvatureProfile:
    """Recover the per-step curvature profile from an integrated shape.

    Exact inverse of integrate_shape's heading update: kappa_i is the
    heading change over step i divided by its arc length, positioned at the
    step start.
    """
    if len(shape) < 2:
        raise InsufficientDataError("need at least 2 points to recover curvature")
    ds = np.diff(shape.arc_lengths)
    kappa = np.diff(shape.headings) / ds
    return CurvatureProfile(shape.arc_lengths[:-1].copy(), kappa)


def resample_profile(profile: StrainProfile, new_spacing: float) -> StrainProfile:
    """Linearly resample a strain profile onto a uniform grid.

    The grid spans the original domain exactly (both endpoints preserved)
    with spacing as close to new_spacing as divides the span evenly.
    """
    if new_spacing <= 0:
        raise DomainError(f"resample spacing must be positive, got {new_spacing}")
    span = profile.span
    if new_spacing > span:
        raise InsufficientDataError(
            f"spacing {new_spacing} mm exceeds the profile span {span} mm"
        )
    n = max(1, int(round(span / new_spacing)))
    grid = np.linspace(profile.positions[0], profile.positions[-1], n + 1)
    strains = np.interp(grid, profile.positions, profile.strains)
    return StrainProfile(grid, strains, dict(profile.meta))
