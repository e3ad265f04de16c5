"""Strain-to-radius calibration from constant-curvature jig measurements.

Each jig slot holds the sensor at a known bend radius; the samples falling
inside the slot are averaged per slot and a power law

    radius_mm = a * strain_ue ** b        (b < 0)

is fitted by ordinary least squares in log-log space. The straight slot
(radius 0 stands for infinite radius) is excluded from the fit but kept to
estimate the noise floor used as the straight-detection threshold.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    CalibrationDomainWarning,
    DomainError,
    InsufficientDataError,
    InvalidPointError,
    InvalidSpecError,
)
from .profiles import StrainProfile

# Jig slot radii in mm; 0 encodes the straight (zero curvature) slot.
DEFAULT_JIG_RADII_MM = (0.0, 100.0, 95.0, 90.0, 85.0, 80.0, 75.0, 70.0, 65.0, 60.0)

# Relative slack on the fit-domain check so boundary values never flag.
_DOMAIN_RTOL = 1e-9


@dataclass(frozen=True)
class CalibrationSlot:
    """Measurements from one jig slot: bend radius plus in-slot strain trials.

    radius is the slot's bend radius in mm; 0 marks the straight slot.
    trials are strain profiles already windowed to the in-slot region.
    """

    radius: float
    trials: tuple[StrainProfile, ...]

    def __post_init__(self):
        if self.radius < 0:
            raise InvalidSpecError(f"slot radius must be >= 0, got {self.radius}")
        object.__setattr__(self, "trials", tuple(self.trials))

    @property
    def is_straight(self) -> bool:
        return self.radius == 0.0


@dataclass(frozen=True)
class PowerLawModel:
    """Calibrated strain-to-radius map: radius_mm = coefficient * strain_ue ** exponent.

    fit_domain is the (min, max) strain in microstrain spanned by the fit
    points; evaluation outside it is allowed but raises a
    CalibrationDomainWarning.
    """

    coefficient: float
    exponent: float
    fit_domain: tuple[float, float]

    def __post_init__(self):
        if self.coefficient <= 0:
            raise InvalidSpecError(
                f"power-law coefficient must be positive, got {self.coefficient}"
            )
        if self.exponent >= 0:
            raise InvalidSpecError(
                f"power-law exponent must be negative, got {self.exponent}"
            )
        lo, hi = self.fit_domain
        if not (0 < lo <= hi):
            raise InvalidSpecError(f"fit domain must satisfy 0 < lo <= hi, got {self.fit_domain}")
        object.__setattr__(self, "fit_domain", (float(lo), float(hi)))

    def in_domain(self, strain_ue) -> np.ndarray | bool:
        lo, hi = self.fit_domain
        eps = np.asarray(strain_ue)
        result = (eps >= lo * (1 - _DOMAIN_RTOL)) & (eps <= hi * (1 + _DOMAIN_RTOL))
        return bool(result) if np.isscalar(strain_ue) else result

    def strain_to_radius(self, strain_ue):
        """Bend radius in mm for the given strain in microstrain.

        Accepts a scalar or array; every strain must be positive. Strictly
        decreasing in strain since the exponent is negative.
        """
        eps = np.asarray(strain_ue, dtype=float)
        if np.any(eps <= 0):
            raise DomainError("strain must be positive to evaluate the power law")
        if not np.all(self.in_domain(eps)):
            lo, hi = self.fit_domain
            warnings.warn(
                f"strain outside calibrated range [{lo:.6g}, {hi:.6g}] ue",
                CalibrationDomainWarning,
                stacklevel=2,
            )
        radius = self.coefficient * eps**self.exponent
        return float(radius) if np.isscalar(strain_ue) else radius

    def radius_to_strain(self, radius_mm):
        """Exact inverse of strain_to_radius: strain in microstrain for a radius in mm."""
        rho = np.asarray(radius_mm, dtype=float)
        if np.any(rho <= 0):
            raise DomainError("radius must be positive to invert the power law")
        eps = (rho / self.coefficient) ** (1.0 / self.exponent)
        return float(eps) if np.isscalar(radius_mm) else eps


@dataclass(frozen=True)
class CalibrationResult:
    """A fitted model plus the fit points and residual statistics.

    points are the (mean strain ue, radius mm) pairs that entered the fit.
    residual_rms is the RMS of log-space radius residuals.
    straight_noise_ue is the standard deviation of the straight-slot strain
    samples (None when no straight slot was measured); 3x this value is the
    recommended straight-detection threshold for reconstruction.
    """

    model: PowerLawModel
    points: tuple[tuple[float, float], ...]
    residual_rms: float
    straight_noise_ue: float | None

    def default_threshold(self, k: float = 3.0) -> float:
        if self.straight_noise_ue is None:
            return 0.0
        return k * self.straight_noise_ue


def slot_average_strain(slot: CalibrationSlot) -> float:
    """Mean strain (microstrain) over all samples of all trials in the slot."""
    if not slot.trials:
        raise InsufficientDataError(
            f"slot radius={slot.radius} mm has no trials to average"
        )
    samples = np.concatenate([t.strains for t in slot.trials])
    return float(samples.mean())


def fit_power_law(points: Sequence[tuple[float, float]]) -> PowerLawModel:
    """Least-squares power-law fit to (strain_ue, radius_mm) pairs.

    Fits ln(radius) = ln(a) + b * ln(strain) by ordinary least squares, so
    data generated exactly from a power law is recovered to machine
    precision. The straight slot must be excluded by the caller (an infinite
    radius has no logarithm).
    """
    pts = list(points)
    if len(pts) < 2:
        raise InsufficientDataError(
            f"need at least 2 calibration points, got {len(pts)}"
        )
    eps = np.array([p[0] for p in pts], dtype=float)
    rho = np.array([p[1] for p in pts], dtype=float)
    if np.any(eps <= 0) or np.any(rho <= 0):
        raise InvalidPointError("calibration points must have positive strain and radius")
    slope, intercept = np.polyfit(np.log(eps), np.log(rho), 1)
    return PowerLawModel(
        coefficient=float(np.exp(intercept)),
        exponent=float(slope),
        fit_domain=(float(eps.min()), float(eps.max())),
    )


def calibrate_slots(slots: Sequence[CalibrationSlot]) -> CalibrationResult:
    """Fit the power law from measured jig slots.

    Averages each bent slot, fits the model, and pools every straight-slot
    sample to estimate the noise floor.
    """
    bent = [s for s in slots if not s.is_straight]
    straight = [s for s in slots if s.is_straight]
    points = [(slot_average_strain(s), s.radius) for s in bent]
    model = fit_power_law(points)

    eps = np.array([p[0] for p in points])
    rho = np.array([p[1] for p in points])
    resid = np.log(rho) - (np.log(model.coefficient) + model.exponent * np.log(eps))
    residual_rms = float(np.sqrt(np.mean(resid**2)))

    noise = None
    if straight:
        samples = np.concatenate([t.strains for s in straight for t in s.trials])
        if samples.size:
            noise = float(samples.std())

    return CalibrationResult(
        model=model,
        points=tuple((float(e), float(r)) for e, r in points),
        residual_rms=residual_rms,
        straight_noise_ue=noise,
    )
