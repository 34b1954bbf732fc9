"""Tire force chain: vertical loads, obstacle reaction, and magic formula.

The chain runs per front tire and per timestep:

    normal_force -> static_deflection -> radial_deflection -> radial_force
    -> non_lagging_force -> contact_patch_normal -> lateral_force
    -> aligning_moment -> rack_force

The obstacle branch (radial and non-lagging forces) reacts instantaneously
to the enveloped effective road; the magic formula supplies the side-slip
force and pneumatic trail whose product, plus a residual term, forms the
aligning moment.  Coefficient tables are quadratic polynomials in a named
load channel, see ``params.LoadPoly``.

Sign conventions: positive slip angle produces negative lateral force with
the default tables; a positive transverse slope (road rising toward +y)
tilts the radial reaction so the non-lagging force picks up a -F_zrad*sin
component.  Angles rad, forces N, moments N*m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SlopeOutOfRange
from .params import Axle, LoadPoly, TireParams, VehicleParams

#: Validity band for road slope magnitudes entering the load equations.
MAX_SLOPE_RAD = math.pi / 4


@dataclass(frozen=True)
class TireLoadState:
    """Vertical-chain quantities for one tire at one timestep."""

    normal_force_N: float
    static_deflection_m: float
    radial_deflection_m: float
    radial_force_N: float
    non_lagging_force_N: float
    contact_patch_normal_N: float


@dataclass(frozen=True)
class TireOutput:
    """Magic formula outputs for one tire at one timestep."""

    lateral_force_N: float
    trail_m: float
    aligning_moment_Nm: float


def _mf(poly: LoadPoly, fz: float, fcn: float) -> float:
    """Magic formula factor: load channel is fz or fcn."""
    return poly.at(fz if poly.load == "fz" else fcn)


def _nl(poly: LoadPoly, fz: float, fzrad: float) -> float:
    """Non-lagging factor: load channel is fz or fzrad."""
    return poly.at(fzrad if poly.load == "fzrad" else fz)


def normal_force(vehicle: VehicleParams, slope_rad: float, axle: Axle) -> float:
    """Static vertical load on one tire of the given axle, in newtons.

    Weight splits across the axles by the opposite lever arm and across the
    two tires of the axle evenly; a global slope scales the vertical
    component by cos(slope).  Raises ``SlopeOutOfRange`` beyond |pi/4|.
    """
    if abs(slope_rad) >= MAX_SLOPE_RAD:
        raise SlopeOutOfRange(
            f"slope {slope_rad} rad outside (-pi/4, pi/4)")
    lever = vehicle.dist_cg_rear_m if axle is Axle.FRONT \
        else vehicle.dist_cg_front_m
    return vehicle.mass_kg * vehicle.gravity_mps2 * lever \
        * math.cos(slope_rad) / (2.0 * vehicle.wheelbase_m)


def static_deflection(vehicle: VehicleParams, tire: TireParams,
                      slope_rad: float, axle: Axle) -> float:
    """Flat-road vertical tire deflection z_a = F_z / C_z, in metres."""
    return normal_force(vehicle, slope_rad, axle) / tire.vertical_stiffness_Npm


def radial_deflection(effective_height_m: float, static_deflection_m: float,
                      forward_slope_rad: float) -> float:
    """Extra radial compression caused by the obstacle, in metres.

    The enveloped effective height is measured against the static
    deflection; the forward slope tilts the contact normal so only the
    cosine component compresses the tire radially.  Zero on flat road.
    """
    return (effective_height_m - static_deflection_m) \
        * math.cos(forward_slope_rad)


def radial_force(tire: TireParams, radial_deflection_m: float,
                 transverse_slope_rad: float) -> float:
    """Obstacle-induced radial force, in newtons, clamped at zero.

    Quadratic in the radial deflection with the linear gain stiffened by
    the squared transverse slope; the clamp models contact loss.
    """
    rho = radial_deflection_m
    raw = tire.q_fz1 * (1.0 + tire.q_fz3 * transverse_slope_rad**2) * rho \
        + tire.q_fz2 * rho * rho
    return raw if raw > 0.0 else 0.0


def non_lagging_force(tire: TireParams, transverse_slope_rad: float,
                      radial_force_N: float, normal_force_N: float) -> float:
    """Instantaneous lateral reaction to the transverse road slope, N.

    A sine magic formula in the transverse slope, projected through the
    slope, minus the lateral component of the tilted radial reaction.
    Responds with no relaxation lag, hence the name.
    """
    bx = transverse_slope_rad
    b = _nl(tire.non_lagging.b_n, normal_force_N, radial_force_N)
    c = _nl(tire.non_lagging.c_n, normal_force_N, radial_force_N)
    d = _nl(tire.non_lagging.d_n, normal_force_N, radial_force_N)
    return d * math.sin(c * math.atan(b * bx)) * math.cos(bx) \
        - radial_force_N * math.sin(bx)


def contact_patch_normal(radial_force_N: float, non_lagging_force_N: float,
                         transverse_slope_rad: float) -> float:
    """Normal force transmitted through the contact patch, N, clamped at
    zero.  Requires |transverse slope| < pi/2."""
    bx = transverse_slope_rad
    raw = (radial_force_N + non_lagging_force_N * math.sin(bx)) / math.cos(bx)
    return raw if raw > 0.0 else 0.0


def lateral_force(tire: TireParams, slip_rad: float, normal_force_N: float,
                  contact_patch_normal_N: float
                  ) -> tuple[float, float, float, float]:
    """Side-slip lateral force, in newtons.

    Returns ``(F_y, alpha_y, alpha_t, alpha_r)``: the force and the three
    shifted slip arguments (force, trail, residual) reused downstream by
    the aligning moment.  Requires |slip| < pi/2.
    """
    fz, fcn = normal_force_N, contact_patch_normal_N
    mf = tire.mf_lateral
    b = _mf(mf.b_y, fz, fcn)
    c = _mf(mf.c_y, fz, fcn)
    d = _mf(mf.d_y, fz, fcn)
    e = _mf(mf.e_y, fz, fcn)
    tan_slip = math.tan(slip_rad)
    alpha_y = _mf(mf.s_hy, fz, fcn) + tan_slip
    alpha_t = _mf(tire.mf_trail.s_ht, fz, fcn) + tan_slip
    alpha_r = tan_slip
    x = b * alpha_y
    force = d * math.sin(c * math.atan(x - e * (x - math.atan(x)))) \
        + _mf(mf.s_vy, fz, fcn)
    return force, alpha_y, alpha_t, alpha_r


def aligning_moment(tire: TireParams, lateral_force_N: float, alpha_t: float,
                    alpha_r: float, normal_force_N: float,
                    contact_patch_normal_N: float) -> tuple[float, float]:
    """Aligning moment about the steering axis, N*m, and the trail, m.

    The pneumatic trail is a cosine magic formula (so |trail| never exceeds
    its peak factor); the moment is -trail * F_y plus a residual cosine
    term.  Returns ``(M_z, trail)``.
    """
    fz, fcn = normal_force_N, contact_patch_normal_N
    tr = tire.mf_trail
    b = _mf(tr.b_t, fz, fcn)
    c = _mf(tr.c_t, fz, fcn)
    d = _mf(tr.d_t, fz, fcn)
    e = _mf(tr.e_t, fz, fcn)
    x = b * alpha_t
    trail = d * math.cos(c * math.atan(x - e * (x - math.atan(x))))
    b_res = _mf(tire.mf_residual.b_r, fz, fcn)
    d_res = _mf(tire.mf_residual.d_r, fz, fcn)
    moment = -trail * lateral_force_N \
        + d_res * math.cos(math.atan(b_res * alpha_r))
    return moment, trail


def rack_force(vehicle: VehicleParams, left_moment_Nm: float,
               right_moment_Nm: float) -> float:
    """Rack force from the two front aligning moments, in newtons."""
    return vehicle.moment_to_rack_ratio_per_m \
        * (left_moment_Nm + right_moment_Nm)
