"""Synthetic interrogator: strain data generated from known shapes.

A beam bent to curvature kappa strains a fiber offset by the sensor bias
delta to epsilon = delta * kappa. Each synthetic sample reports the strain
averaged over one resolution cell of the fiber (the gauge average), which
for a cell [s, s+h] equals delta * (theta(s+h) - theta(s)) / h. Additive
Gaussian noise with a fixed seed makes every dataset reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .calibration import DEFAULT_JIG_RADII_MM, CalibrationSlot
from .errors import DomainError, InvalidSpecError
from .metrics import GroundTruth
from .profiles import StrainProfile

# Microstrain per unit dimensionless strain.
UE_PER_STRAIN = 1e6

# Effective lever arm backed out of bench strain-radius products; the
# transformed-section analysis of the production geometry gives 0.152 mm
# and the previously reported value is 0.079 mm (see bias_presets).
DEFAULT_EFFECTIVE_BIAS_MM = 0.1464

DEFAULT_RESOLUTION_MM = 1.3
DEFAULT_FRAME_RATE_HZ = 62.5

# In-slot fiber length used when synthesizing calibration segments (mm).
DEFAULT_SLOT_SEGMENT_MM = 170.0


def bias_presets() -> dict[str, float]:
    """Named sensor-bias choices (mm): effective, transformed_section, reported."""
    from .beam import REPORTED_ASSEMBLY_BIAS_MM, FiberSpec, WireSpec, analyze_assembly

    return {
        "effective": DEFAULT_EFFECTIVE_BIAS_MM,
        "transformed_section": analyze_assembly(FiberSpec(), WireSpec()).bias,
        "reported": REPORTED_ASSEMBLY_BIAS_MM,
    }


@dataclass(frozen=True)
class SensorModel:
    """Synthetic sensor parameters: lever arm, sampling grid, noise, seed."""

    bias: float = DEFAULT_EFFECTIVE_BIAS_MM
    spatial_resolution: float = DEFAULT_RESOLUTION_MM
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.bias <= 0:
            raise InvalidSpecError(f"sensor bias must be positive, got {self.bias}")
        if self.spatial_resolution <= 0:
            raise InvalidSpecError(
                f"spatial resolution must be positive, got {self.spatial_resolution}"
            )
        if self.noise_sigma < 0:
            raise InvalidSpecError(
                f"noise sigma must be nonnegative, got {self.noise_sigma}"
            )

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


@dataclass(frozen=True)
class FrameStream:
    """Timed sequence of strain profiles replayed at a fixed frame rate."""

    frame_rate: float
    frames: tuple[StrainProfile, ...]

    def __post_init__(self):
        if self.frame_rate <= 0:
            raise InvalidSpecError(f"frame rate must be positive, got {self.frame_rate}")
        object.__setattr__(self, "frames", tuple(self.frames))
        stamps = [f.meta.get("timestamp_s") for f in self.frames]
        if any(t is None for t in stamps):
            raise InvalidSpecError("every frame needs a timestamp_s meta entry")
        if any(b <= a for a, b in zip(stamps, stamps[1:])):
            raise InvalidSpecError("frame timestamps must be strictly increasing")

    def __len__(self) -> int:
        return len(self.frames)


def _cell_grid(length: float, resolution: float) -> tuple[np.ndarray, float]:
    """Segment-start positions and cell width covering [0, length] evenly."""
    n = max(2, int(round(length / resolution)))
    h = length / n
    return h * np.arange(n), h


def strain_from_truth(
    truth: GroundTruth,
    sensor: SensorModel,
    rng: np.random.Generator | None = None,
) -> StrainProfile:
    """Synthesize one distributed strain profile for a shape held in a jig.

    Positions are the resolution-cell start points covering the truth's
    length; each sample is bias * (cell-average curvature) in microstrain
    plus Gaussian noise. Deterministic for a fixed sensor seed.
    """
    starts, h = _cell_grid(truth.total_length, sensor.spatial_resolution)
    boundaries = np.append(starts, truth.total_length)
    theta = truth.heading_at(boundaries)
    kappa_cell = np.diff(theta) / h
    eps = sensor.bias * kappa_cell * UE_PER_STRAIN
    if sensor.noise_sigma > 0:
        if rng is None:
            rng = sensor.rng()
        eps = eps + rng.normal(0.0, sensor.noise_sigma, eps.size)
    meta = {"bias_mm": sensor.bias, "resolution_mm": h, "noise_sigma_ue": sensor.noise_sigma}
    return StrainProfile(starts, eps, meta)


def synth_calibration_dataset(
    jig_radii: Sequence[float] = DEFAULT_JIG_RADII_MM,
    sensor: SensorModel = SensorModel(),
    trials: int = 3,
    segment_length: float = DEFAULT_SLOT_SEGMENT_MM,
    rng: np.random.Generator | None = None,
) -> list[CalibrationSlot]:
    """Generate per-slot, per-trial constant-curvature strain segments.

    Radius 0 encodes the straight slot (zero strain plus noise). With zero
    noise the slot averages fall exactly on the power law
    radius = (bias * 1e6) * strain**-1, so a fit recovers that law to
    machine precision.
    """
    if trials < 1:
        raise InvalidSpecError(f"need at least one trial per slot, got {trials}")
    for r in jig_radii:
        if r < 0:
            raise InvalidSpecError(f"jig radii must be >= 0, got {r}")
    if rng is None:
        rng = sensor.rng()
    positions, _ = _cell_grid(segment_length, sensor.spatial_resolution)
    n = positions.size

    slots = []
    for radius in jig_radii:
        eps_true = 0.0 if radius == 0 else sensor.bias / radius * UE_PER_STRAIN
        trial_profiles = []
        for k in range(trials):
            eps = np.full(n, eps_true)
            if sensor.noise_sigma > 0:
                eps = eps + rng.normal(0.0, sensor.noise_sigma, n)
            trial_profiles.append(
                StrainProfile(positions.copy(), eps, {"slot_radius_mm": radius, "trial": k})
            )
        slots.append(CalibrationSlot(radius=radius, trials=tuple(trial_profiles)))
    return slots


def stream_frames(
    truth_sequence: Sequence[GroundTruth],
    sensor: SensorModel,
    rate: float = DEFAULT_FRAME_RATE_HZ,
) -> FrameStream:
    """Replay a sequence of poses as a timed frame stream.

    One frame per pose at fixed cadence 1/rate. Frames are independent:
    noise draws never carry state across frames, so a consumer may drop any
    frame without corrupting later ones.
    """
    if rate <= 0:
        raise DomainError(f"frame rate must be positive, got {rate}")
    rng = sensor.rng()
    frames = []
    for i, truth in enumerate(truth_sequence):
        frame = strain_from_truth(truth, sensor, rng=rng)
        meta = dict(frame.meta)
        meta.update({"timestamp_s": i / rate, "rate_hz": rate, "frame": i})
        frames.append(StrainProfile(frame.positions, frame.strains, meta))
    return FrameStream(frame_rate=rate, frames=tuple(frames))
