"""fibershape: single-fiber distributed-strain shape sensing toolkit.

Design the fiber-on-flat-wire assembly, calibrate the strain-to-radius
power law, reconstruct planar shapes from distributed strain, score them
against known jig geometry, and synthesize physically consistent strain
data to exercise the whole chain without hardware.
"""

__version__ = "0.1.0"

from .beam import (
    DesignCandidate,
    FiberSpec,
    SSAGeometry,
    WireSpec,
    analyze_assembly,
    design_search,
    min_bend_radius,
    neutral_plane,
    sensor_bias,
)
from .calibration import (
    CalibrationResult,
    CalibrationSlot,
    PowerLawModel,
    calibrate_slots,
    fit_power_law,
    slot_average_strain,
)
from .config import ToolkitConfig, config_hash, default_config, load_config
from .metrics import (
    ErrorReport,
    GroundTruth,
    area_error,
    average_radius,
    custom_ground_truth,
    make_ground_truth,
    score_reconstruction,
    shape_error,
    tip_position_error,
)
from .profiles import CurvatureProfile, PlanarShape, StrainProfile
from .reconstruction import (
    curvature_from_shape,
    integrate_shape,
    resample_profile,
    strains_to_curvatures,
)
from .synthesis import (
    FrameStream,
    SensorModel,
    bias_presets,
    strain_from_truth,
    stream_frames,
    synth_calibration_dataset,
)

__all__ = [
    "__version__",
    "DesignCandidate",
    "FiberSpec",
    "SSAGeometry",
    "WireSpec",
    "analyze_assembly",
    "design_search",
    "min_bend_radius",
    "neutral_plane",
    "sensor_bias",
    "CalibrationResult",
    "CalibrationSlot",
    "PowerLawModel",
    "calibrate_slots",
    "fit_power_law",
    "slot_average_strain",
    "ToolkitConfig",
    "config_hash",
    "default_config",
    "load_config",
    "ErrorReport",
    "GroundTruth",
    "area_error",
    "average_radius",
    "custom_ground_truth",
    "make_ground_truth",
    "score_reconstruction",
    "shape_error",
    "tip_position_error",
    "CurvatureProfile",
    "PlanarShape",
    "StrainProfile",
    "curvature_from_shape",
    "integrate_shape",
    "resample_profile",
    "strains_to_curvatures",
    "FrameStream",
    "SensorModel",
    "bias_presets",
    "strain_from_truth",
    "stream_frames",
    "synth_calibration_dataset",
]
