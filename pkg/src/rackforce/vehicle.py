"""Planar two-degree-of-freedom single-track body dynamics.

States are lateral speed v and yaw rate; forward speed u is an input, not a
state.  In lateral-slope mode the road bank adds a gravity pull to the
lateral force balance; in longitudinal-slope mode the grade does not enter
the lateral equations and couples only through the tire load chain.

    m*(dv/dt) + m*u*yaw_rate + m*g*sin(theta) = F_yf + F_yr
    I*(dyaw_rate/dt) = l_f*F_yf - l_r*F_yr

Integration is classical fixed-step RK4 with axle forces held constant over
the step, matching the explicit force/state coupling of the estimator loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError, SpeedTooLow
from .params import (SPEED_FLOOR_MPS, Axle, DriverInputs, RoadInputs,
                     SlopeMode, VehicleParams, VehicleState)

#: Largest admissible integration step in seconds.
MAX_STEP_S = 0.02


@dataclass(frozen=True)
class AxleForces:
    """Total lateral tire force per axle, in newtons."""

    front_N: float
    rear_N: float


@dataclass(frozen=True)
class StateDerivative:
    """Time derivatives of the planar state."""

    lateral_accel_mps2: float
    yaw_accel_radps2: float


def _require_speed(u_mps: float) -> None:
    if u_mps < SPEED_FLOOR_MPS:
        raise SpeedTooLow(
            f"forward speed {u_mps} m/s is below the {SPEED_FLOOR_MPS} m/s floor")


def dynamics(state: VehicleState, inputs: DriverInputs, road: RoadInputs,
             forces: AxleForces, vehicle: VehicleParams) -> StateDerivative:
    """Evaluate the 2DOF force and moment balance at one instant."""
    _require_speed(inputs.forward_speed_mps)
    lat_accel = (forces.front_N + forces.rear_N) / vehicle.mass_kg \
        - inputs.forward_speed_mps * state.yaw_rate_radps
    if road.slope_mode is SlopeMode.LATERAL:
        lat_accel -= vehicle.gravity_mps2 * math.sin(road.lateral_slope_rad)
    yaw_accel = (vehicle.dist_cg_front_m * forces.front_N
                 - vehicle.dist_cg_rear_m * forces.rear_N) / vehicle.yaw_inertia_kgm2
    return StateDerivative(lat_accel, yaw_accel)


def rk4_step(deriv, v: float, r: float, dt_s: float) -> tuple[float, float]:
    """One classical Runge-Kutta step of the pair (v, r).

    ``deriv(v, r)`` returns (dv/dt, dr/dt).  Kept as a bare function over
    floats so both the frozen-force plant step and fully coupled test
    oracles integrate through the identical arithmetic.
    """
    k1v, k1r = deriv(v, r)
    k2v, k2r = deriv(v + 0.5 * dt_s * k1v, r + 0.5 * dt_s * k1r)
    k3v, k3r = deriv(v + 0.5 * dt_s * k2v, r + 0.5 * dt_s * k2r)
    k4v, k4r = deriv(v + dt_s * k3v, r + dt_s * k3r)
    return (v + dt_s * (k1v + 2.0 * (k2v + k3v) + k4v) / 6.0,
            r + dt_s * (k1r + 2.0 * (k2r + k3r) + k4r) / 6.0)


def step(state: VehicleState, inputs: DriverInputs, road: RoadInputs,
         forces: AxleForces, vehicle: VehicleParams,
         dt_s: float) -> VehicleState:
    """Advance the state by one RK4 step with forces frozen over the step."""
    if not 0.0 < dt_s <= MAX_STEP_S:
        raise ParameterError(
            f"dt_s must lie in (0, {MAX_STEP_S}], got {dt_s}",
            category="StepSizeOutOfRange")
    _require_speed(inputs.forward_speed_mps)

    def deriv(v, r):
        d = dynamics(VehicleState(v, r), inputs, road, forces, vehicle)
        return d.lateral_accel_mps2, d.yaw_accel_radps2

    v, r = rk4_step(deriv, state.lateral_speed_mps, state.yaw_rate_radps, dt_s)
    return VehicleState(v, r)


def slip_angle(state: VehicleState, inputs: DriverInputs,
               vehicle: VehicleParams, axle: Axle) -> float:
    """Tire side-slip angle at one axle, in radians.

    Front tires see the velocity angle of the front contact point minus the
    steer angle; the rear axle is unsteered.  Positive slip means the
    contact point velocity points left of the wheel heading.
    """
    _require_speed(inputs.forward_speed_mps)
    v = state.lateral_speed_mps
    r = state.yaw_rate_radps
    u = inputs.forward_speed_mps
    if axle is Axle.FRONT:
        return math.atan((v + vehicle.dist_cg_front_m * r) / u) \
            - inputs.steer_angle_rad
    return math.atan((v - vehicle.dist_cg_rear_m * r) / u)
