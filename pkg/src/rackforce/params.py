"""Parameter and state containers for the rack force estimator.

All quantities are SI (m, kg, s, N, rad) and field names carry the unit as a
suffix.  Axis conventions: x forward, y to the driver's left, z up; positive
steer and positive yaw rate turn the vehicle to the left; a positive lateral
slope raises the left side of the road.  See docs/conventions.md for the
symbol table mapping short math names onto these fields.

Containers are frozen dataclasses: construction is cheap, instances hash and
compare by value, and simulation code can never mutate a parameter set
mid-run.  ``validate_params`` performs the full invariant sweep and reports
the first violation by name.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import InvalidCamGeometry, ParameterError

#: Forward-speed floor in m/s below which slip angles are ill-conditioned.
#: Simulation code emits degraded hold-last samples instead of evaluating
#: the model below this speed.
SPEED_FLOOR_MPS = 0.5


class SlopeMode(Enum):
    """Selects which road-slope channel couples into the body equations."""

    LATERAL = "lateral"
    LONGITUDINAL = "longitudinal"


class Axle(Enum):
    FRONT = "front"
    REAR = "rear"


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value!r}",
                             category="NonFiniteValue")


@dataclass(frozen=True)
class LoadPoly:
    """Quadratic load polynomial p0 + p1*F + p2*F**2 for one tire factor.

    ``load`` names the force channel fed into the polynomial: ``"fz"`` the
    static vertical tire load, ``"fcn"`` the contact patch normal force, or
    ``"fzrad"`` the radial obstacle force.  Which names are admissible
    depends on the owning table and is checked by ``validate_params``.
    """

    p0: float = 0.0
    p1: float = 0.0
    p2: float = 0.0
    load: str = "fz"

    def __post_init__(self):
        for name in ("p0", "p1", "p2"):
            _require_finite(f"LoadPoly.{name}", getattr(self, name))
        if self.load not in ("fz", "fcn", "fzrad"):
            raise ParameterError(
                f"LoadPoly.load must be one of 'fz', 'fcn', 'fzrad', "
                f"got {self.load!r}", category="UnknownLoadName")

    def at(self, load_n: float) -> float:
        """Evaluate the polynomial at a load in newtons."""
        return self.p0 + (self.p1 + self.p2 * load_n) * load_n


@dataclass(frozen=True)
class MfLateral:
    """Pure side-slip magic formula factors for the lateral force."""

    b_y: LoadPoly = field(default_factory=lambda: LoadPoly(9.0, 5.0e-5, 0.0, "fcn"))
    c_y: LoadPoly = field(default_factory=lambda: LoadPoly(1.35))
    d_y: LoadPoly = field(default_factory=lambda: LoadPoly(0.0, -1.0))
    e_y: LoadPoly = field(default_factory=lambda: LoadPoly(-1.0))
    s_hy: LoadPoly = field(default_factory=lambda: LoadPoly(0.0, load="fcn"))
    s_vy: LoadPoly = field(default_factory=lambda: LoadPoly(0.0, load="fcn"))


@dataclass(frozen=True)
class MfTrail:
    """Pneumatic trail factors; the trail scales the lateral force into an
    aligning moment, so its peak value d_t is a length in metres."""

    b_t: LoadPoly = field(default_factory=lambda: LoadPoly(6.0))
    c_t: LoadPoly = field(default_factory=lambda: LoadPoly(1.1))
    d_t: LoadPoly = field(default_factory=lambda: LoadPoly(0.03, 2.0e-6, 0.0, "fcn"))
    e_t: LoadPoly = field(default_factory=lambda: LoadPoly(0.0))
    s_ht: LoadPoly = field(default_factory=lambda: LoadPoly(0.0, load="fcn"))


@dataclass(frozen=True)
class MfResidual:
    """Residual aligning moment factors (ply steer / conicity leftovers)."""

    b_r: LoadPoly = field(default_factory=lambda: LoadPoly(8.0))
    d_r: LoadPoly = field(default_factory=lambda: LoadPoly(0.0))


@dataclass(frozen=True)
class NonLagging:
    """Factors for the instantaneous lateral reaction of the contact patch
    to the effective transverse road slope."""

    b_n: LoadPoly = field(default_factory=lambda: LoadPoly(8.0))
    c_n: LoadPoly = field(default_factory=lambda: LoadPoly(1.2))
    d_n: LoadPoly = field(default_factory=lambda: LoadPoly(0.0, 0.3, 0.0, "fzrad"))


@dataclass(frozen=True)
class CamGeometry:
    """Tandem elliptical cam follower used to envelope short obstacles.

    Two cams, one ``spacing_m`` ahead of the contact centre and one behind,
    ride over the raw height map; their midpoint height and pitch give the
    effective road.  ``exponent`` is the superellipse order (2 = ellipse).
    ``track_half_width_m`` is the lateral half-distance between the two
    cam tracks that resolve the transverse slope under one tire.
    """

    half_length_m: float = 0.10
    half_height_m: float = 0.04
    spacing_m: float = 0.14
    track_half_width_m: float = 0.08
    exponent: float = 2.0


@dataclass(frozen=True)
class VehicleParams:
    """Single-track body and steering rack parameters."""

    mass_kg: float = 1800.0
    yaw_inertia_kgm2: float = 3250.0
    dist_cg_front_m: float = 1.4
    dist_cg_rear_m: float = 1.6
    moment_to_rack_ratio_per_m: float = 7.0
    gravity_mps2: float = 9.81
    front_track_m: float = 1.6
    rear_cornering_stiffness_Nprad: float = 120000.0

    def __post_init__(self):
        for name in ("mass_kg", "yaw_inertia_kgm2", "dist_cg_front_m",
                     "dist_cg_rear_m", "moment_to_rack_ratio_per_m",
                     "gravity_mps2", "front_track_m",
                     "rear_cornering_stiffness_Nprad"):
            _require_finite(f"VehicleParams.{name}", getattr(self, name))

    @property
    def wheelbase_m(self) -> float:
        return self.dist_cg_front_m + self.dist_cg_rear_m


@dataclass(frozen=True)
class TireParams:
    """Vertical, radial-obstacle, and magic formula tire parameters.

    The shipped defaults are a plausible passenger-car set chosen so every
    documented invariant holds; they are placeholders, not identified values,
    and any quantitative use requires fitting against measurements.
    """

    vertical_stiffness_Npm: float = 200000.0
    q_fz1: float = 200000.0
    q_fz2: float = 1.0e6
    q_fz3: float = 0.5
    mf_lateral: MfLateral = field(default_factory=MfLateral)
    mf_trail: MfTrail = field(default_factory=MfTrail)
    mf_residual: MfResidual = field(default_factory=MfResidual)
    non_lagging: NonLagging = field(default_factory=NonLagging)
    cam: CamGeometry = field(default_factory=CamGeometry)

    def __post_init__(self):
        for name in ("vertical_stiffness_Npm", "q_fz1", "q_fz2", "q_fz3"):
            _require_finite(f"TireParams.{name}", getattr(self, name))


@dataclass(frozen=True)
class VehicleState:
    """Planar 2DOF state: lateral speed v and yaw rate.  The small-angle
    assumption |v| < u is checked at use sites with a warning, not here."""

    lateral_speed_mps: float = 0.0
    yaw_rate_radps: float = 0.0

    def __post_init__(self):
        _require_finite("VehicleState.lateral_speed_mps", self.lateral_speed_mps)
        _require_finite("VehicleState.yaw_rate_radps", self.yaw_rate_radps)


@dataclass(frozen=True)
class DriverInputs:
    """Steer angle at the road wheels and forward speed for one timestep.

    Operations that divide by the forward speed raise ``SpeedTooLow`` below
    ``SPEED_FLOOR_MPS``; the container itself only requires finite values so
    raw log samples can always be represented.
    """

    steer_angle_rad: float
    forward_speed_mps: float

    def __post_init__(self):
        _require_finite("DriverInputs.steer_angle_rad", self.steer_angle_rad)
        _require_finite("DriverInputs.forward_speed_mps", self.forward_speed_mps)


@dataclass(frozen=True)
class RoadInputs:
    """Road geometry for one timestep: the two slope channels, the cleat
    map, and which slope channel couples into the body equations."""

    lateral_slope_rad: float = 0.0
    longitudinal_slope_rad: float = 0.0
    cleats: tuple = ()
    slope_mode: SlopeMode = SlopeMode.LATERAL

    def __post_init__(self):
        _require_finite("RoadInputs.lateral_slope_rad", self.lateral_slope_rad)
        _require_finite("RoadInputs.longitudinal_slope_rad",
                        self.longitudinal_slope_rad)

    def coupled_slope_rad(self) -> float:
        """Slope entering the gravity term of the body equations."""
        if self.slope_mode is SlopeMode.LATERAL:
            return self.lateral_slope_rad
        return self.longitudinal_slope_rad


def default_vehicle() -> VehicleParams:
    """Placeholder mid-size passenger car parameter set."""
    return VehicleParams()


def default_tire() -> TireParams:
    """Placeholder tire parameter set matching ``default_vehicle``."""
    return TireParams()


def _check(cond: bool, category: str, message: str) -> None:
    if not cond:
        raise ParameterError(message, category=category)


_MF_LOADS = ("fz", "fcn")
_NL_LOADS = ("fz", "fzrad")


def _table_factors(tire: TireParams):
    """Yield (table.factor, poly, admissible load names) for every factor."""
    for table, loads in (("mf_lateral", _MF_LOADS), ("mf_trail", _MF_LOADS),
                         ("mf_residual", _MF_LOADS), ("non_lagging", _NL_LOADS)):
        group = getattr(tire, table)
        for name in group.__dataclass_fields__:
            yield f"{table}.{name}", getattr(group, name), loads


def validate_params(vehicle: VehicleParams,
                    tire: TireParams) -> tuple[VehicleParams, TireParams]:
    """Check every documented parameter invariant, in declaration order.

    Raises ``ParameterError`` naming the first violated invariant via its
    ``category`` and the offending field in the message.  Returns the inputs
    unchanged, so the call is idempotent and composes as a pass-through.
    """
    _check(vehicle.mass_kg > 0, "NonPositiveMass",
           f"mass_kg must be > 0, got {vehicle.mass_kg}")
    _check(vehicle.yaw_inertia_kgm2 > 0, "NonPositiveInertia",
           f"yaw_inertia_kgm2 must be > 0, got {vehicle.yaw_inertia_kgm2}")
    for name in ("dist_cg_front_m", "dist_cg_rear_m", "front_track_m"):
        _check(getattr(vehicle, name) > 0, "NonPositiveLength",
               f"{name} must be > 0, got {getattr(vehicle, name)}")
    _check(vehicle.moment_to_rack_ratio_per_m != 0, "ZeroRackRatio",
           "moment_to_rack_ratio_per_m must be nonzero")
    _check(vehicle.gravity_mps2 > 0, "NonPositiveGravity",
           f"gravity_mps2 must be > 0, got {vehicle.gravity_mps2}")
    _check(vehicle.rear_cornering_stiffness_Nprad > 0, "NonPositiveStiffness",
           "rear_cornering_stiffness_Nprad must be > 0, got "
           f"{vehicle.rear_cornering_stiffness_Nprad}")
    _check(tire.vertical_stiffness_Npm > 0, "NonPositiveStiffness",
           f"vertical_stiffness_Npm must be > 0, got {tire.vertical_stiffness_Npm}")
    _check(tire.q_fz1 >= 0, "NegativeRadialCoefficient",
           f"q_fz1 must be >= 0, got {tire.q_fz1}")

    # Tables must stay finite (and shape factors in the open sine-shape band)
    # over the full load range a tire can see: zero through twice the heavier
    # static axle load.
    g, m = vehicle.gravity_mps2, vehicle.mass_kg
    heavy = max(vehicle.dist_cg_rear_m, vehicle.dist_cg_front_m)
    max_load = 2.0 * m * g * heavy / vehicle.wheelbase_m
    grid = [max_load * i / 40.0 for i in range(41)]
    for label, poly, loads in _table_factors(tire):
        _check(poly.load in loads, "UnknownLoadName",
               f"{label} uses load {poly.load!r}, admissible: {loads}")
        for load in grid:
            _check(math.isfinite(poly.at(load)), "CoefficientRangeError",
                   f"{label} non-finite at load {load:.1f} N")
    for label, poly in (("mf_lateral.c_y", tire.mf_lateral.c_y),
                        ("mf_trail.c_t", tire.mf_trail.c_t),
                        ("non_lagging.c_n", tire.non_lagging.c_n)):
        for load in grid:
            value = poly.at(load)
            _check(0.0 < value < 3.0, "CoefficientRangeError",
                   f"{label} must stay in (0, 3) over the load range, "
                   f"got {value:.4f} at {load:.1f} N")

    cam = tire.cam
    for name in ("half_length_m", "half_height_m", "spacing_m",
                 "track_half_width_m"):
        if getattr(cam, name) <= 0:
            raise InvalidCamGeometry(
                f"cam.{name} must be > 0, got {getattr(cam, name)}")
    if cam.exponent < 1.0:
        raise InvalidCamGeometry(
            f"cam.exponent must be >= 1, got {cam.exponent}")
    return vehicle, tire
