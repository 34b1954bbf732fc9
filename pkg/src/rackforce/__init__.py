"""Steering rack force estimation from driving logs on uneven roads.

The package couples a planar 2DOF single-track body with a tire chain that
reacts to an enveloped effective road profile (slopes, cleats, potholes)
and maps the front aligning moments to the steering rack.  A flat-road
baseline variant shares the body model but ignores all road inputs, so the
contribution of road awareness can be scored on the same log.
"""

from .errors import (EmptyLog, EmptySeries, InputError, InvalidCamGeometry,
                     LengthMismatch, NonMonotonicTime, NumericError,
                     ParameterError, RackForceError, RateOutOfRange,
                     SlopeOutOfRange, SpeedTooLow)
from .estimator import RackForceEstimator, as_driving_log
from .logs import DrivingLog, ingest, resample_linear
from .params import (SPEED_FLOOR_MPS, Axle, CamGeometry, DriverInputs,
                     LoadPoly, MfLateral, MfResidual, MfTrail, NonLagging,
                     RoadInputs, SlopeMode, TireParams, VehicleParams,
                     VehicleState, default_tire, default_vehicle,
                     validate_params)
from .road import (CleatSpec, EffectiveProfile, EffectiveRoadPoint,
                   TrackEnvelope, effective_profile, envelope_track,
                   load_cleats, road_height)
from .simulate import (SLIP_CLAMP_RAD, EstimateSample, ModelVariant,
                       TireSample, mean_absolute_error, simulate)
from .tire import (TireLoadState, TireOutput, aligning_moment,
                   contact_patch_normal, lateral_force, non_lagging_force,
                   normal_force, rack_force, radial_deflection, radial_force,
                   static_deflection)
from .vehicle import (MAX_STEP_S, AxleForces, StateDerivative, dynamics,
                      rk4_step, slip_angle, step)

__version__ = "0.1.0"

__all__ = [
    "Axle", "AxleForces", "CamGeometry", "CleatSpec", "DriverInputs",
    "DrivingLog", "EffectiveProfile", "EffectiveRoadPoint", "EmptyLog",
    "EmptySeries", "EstimateSample", "InputError", "InvalidCamGeometry",
    "LengthMismatch", "LoadPoly", "MAX_STEP_S", "MfLateral", "MfResidual",
    "MfTrail", "ModelVariant", "NonLagging", "NonMonotonicTime",
    "NumericError", "ParameterError", "RackForceError", "RackForceEstimator",
    "RateOutOfRange", "RoadInputs", "SLIP_CLAMP_RAD", "SPEED_FLOOR_MPS",
    "SlopeMode",
    "SlopeOutOfRange", "SpeedTooLow", "StateDerivative", "TireLoadState",
    "TireOutput", "TireParams", "TireSample", "TrackEnvelope",
    "VehicleParams", "VehicleState", "aligning_moment", "as_driving_log",
    "contact_patch_normal", "default_tire", "default_vehicle", "dynamics",
    "effective_profile", "envelope_track", "ingest", "lateral_force",
    "load_cleats", "mean_absolute_error", "non_lagging_force", "normal_force",
    "rack_force", "radial_deflection", "radial_force", "resample_linear",
    "road_height", "simulate", "slip_angle", "static_deflection", "step",
    "validate_params",
]
