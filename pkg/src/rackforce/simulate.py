"""Closed-loop rack force estimation over a driving log.

Each requested model variant runs its own simulation: the road-aware
variant feeds slopes and enveloped cleats into the tire chain, the
flat-road baseline zeroes all road inputs and sees only steer and speed.
Both integrate the same 2DOF body at the log rate with forces frozen over
each step, tires evaluated once per step on the pre-step state.

Below the forward-speed floor the model is ill-conditioned, so those
timesteps emit the previous sample's outputs with the ``degraded`` flag
set instead of evaluating the model.  Output samples are strictly ordered
in time and every run is bit-reproducible for identical inputs.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType

import numpy as np

from .errors import (EmptySeries, LengthMismatch, NumericError, ParameterError,
                     RackForceError)
from .logs import DrivingLog
from .params import (SPEED_FLOOR_MPS, Axle, DriverInputs, RoadInputs,
                     SlopeMode, TireParams, VehicleParams, VehicleState,
                     validate_params)
from .road import EffectiveProfile, EffectiveRoadPoint
from .tire import (TireLoadState, TireOutput, aligning_moment,
                   contact_patch_normal, lateral_force, non_lagging_force,
                   normal_force, rack_force, radial_deflection, radial_force,
                   static_deflection)
from .vehicle import AxleForces, slip_angle, step

#: Slip angles fed to the tire model are clamped to this magnitude; the
#: formula's slip argument is a tangent and loses meaning at |pi/2|.
SLIP_CLAMP_RAD = math.pi / 2 - 1e-3


class ModelVariant(Enum):
    """Estimator variants: road-aware tire chain vs flat-road 2DOF."""

    RR = "rr"
    FLAT_ROAD_2DOF = "fr"


@dataclass(frozen=True)
class TireSample:
    """Per-tire detail recorded with each estimate sample."""

    road: EffectiveRoadPoint
    loads: TireLoadState
    output: TireOutput


_ZERO_TIRE = TireSample(EffectiveRoadPoint(0.0, 0.0, 0.0),
                        TireLoadState(0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
                        TireOutput(0.0, 0.0, 0.0))


@dataclass(frozen=True)
class EstimateSample:
    """One timestep of the estimate, input echo and detail included.

    ``rack_force_N`` maps each requested variant to its estimate; tire
    detail and body state come from the road-aware variant when it was
    requested, otherwise from the first requested variant.  The state is
    the pre-step state the tires were evaluated on.
    """

    time_s: float
    steer_angle_rad: float
    speed_mps: float
    lateral_slope_rad: float
    longitudinal_slope_rad: float
    lateral_speed_mps: float
    yaw_rate_radps: float
    left: TireSample
    right: TireSample
    rack_force_N: MappingProxyType
    degraded: bool
    measured_rack_N: float | None = None


def _clamp_slip(angle_rad: float) -> float:
    if angle_rad > SLIP_CLAMP_RAD:
        return SLIP_CLAMP_RAD
    if angle_rad < -SLIP_CLAMP_RAD:
        return -SLIP_CLAMP_RAD
    return angle_rad


def _run_variant(log: DrivingLog, vehicle: VehicleParams, tire: TireParams,
                 cleats, slope_mode: SlopeMode, road_aware: bool):
    """Simulate one variant; returns per-step (rack, left, right, v, r)."""
    n = len(log)
    dt = 1.0 / log.rate_hz
    half_track = 0.5 * vehicle.front_track_m
    active_cleats = tuple(cleats) if road_aware else ()
    profile_left = EffectiveProfile(half_track, active_cleats, tire.cam)
    profile_right = EffectiveProfile(-half_track, active_cleats, tire.cam)
    c_rear = vehicle.rear_cornering_stiffness_Nprad

    racks = np.empty(n)
    lefts: list[TireSample] = []
    rights: list[TireSample] = []
    states = np.empty((n, 2))
    degraded = np.zeros(n, dtype=bool)

    v = 0.0
    r = 0.0
    station = 0.0
    warned = False
    last_rack = 0.0
    last_left = _ZERO_TIRE
    last_right = _ZERO_TIRE
    for i in range(n):
        steer = float(log.steer_angle_rad[i])
        u = float(log.speed_mps[i])
        theta_lat = float(log.lateral_slope_rad[i]) if road_aware else 0.0
        theta_long = float(log.longitudinal_slope_rad[i]) if road_aware else 0.0
        if u < SPEED_FLOOR_MPS:
            racks[i] = last_rack
            lefts.append(last_left)
            rights.append(last_right)
            states[i] = (v, r)
            degraded[i] = True
            station += u * dt
            continue
        try:
            road = RoadInputs(theta_lat, theta_long, active_cleats, slope_mode)
            state = VehicleState(v, r)
            inputs = DriverInputs(steer, u)
            if not warned and abs(v) >= u:
                warnings.warn(
                    f"|lateral speed| {abs(v):.2f} m/s reached forward speed "
                    f"{u:.2f} m/s; small-angle assumptions degrade",
                    RuntimeWarning, stacklevel=3)
                warned = True
            coupled = road.coupled_slope_rad()
            fz = normal_force(vehicle, coupled, Axle.FRONT)
            za = static_deflection(vehicle, tire, coupled, Axle.FRONT)
            slip_front = _clamp_slip(slip_angle(state, inputs, vehicle,
                                                Axle.FRONT))
            slip_rear = _clamp_slip(slip_angle(state, inputs, vehicle,
                                               Axle.REAR))

            side_force = 0.0
            moments = []
            samples = []
            for profile in (profile_left, profile_right):
                point = profile.at(station, za, road)
                rho = radial_deflection(point.effective_height_m, za,
                                        point.forward_slope_rad)
                f_rad = radial_force(tire, rho, point.transverse_slope_rad)
                f_nl = non_lagging_force(tire, point.transverse_slope_rad,
                                         f_rad, fz)
                f_cn = contact_patch_normal(f_rad, f_nl,
                                            point.transverse_slope_rad)
                fy, _, alpha_t, alpha_r = lateral_force(tire, slip_front, fz,
                                                        f_cn)
                mz, trail = aligning_moment(tire, fy, alpha_t, alpha_r, fz,
                                            f_cn)
                side_force += fy
                moments.append(mz)
                samples.append(TireSample(
                    point,
                    TireLoadState(fz, za, rho, f_rad, f_nl, f_cn),
                    TireOutput(fy, trail, mz)))

            rack = rack_force(vehicle, moments[0], moments[1])
            rear_force = -c_rear * slip_rear
            forces = AxleForces(side_force, rear_force)
            new_state = step(state, inputs, road, forces, vehicle, dt)
            if not (math.isfinite(rack)
                    and math.isfinite(new_state.lateral_speed_mps)
                    and math.isfinite(new_state.yaw_rate_radps)):
                raise NumericError("rack force or body state became non-finite")
        except RackForceError as err:
            # Inputs are validated before the loop, so a non-finite value
            # surfacing mid-run is a numeric failure, not a usage error.
            if err.category == "NonFiniteValue":
                err = NumericError(err.message)
            err.timestep = i
            raise err
        racks[i] = rack
        lefts.append(samples[0])
        rights.append(samples[1])
        states[i] = (v, r)
        last_rack = rack
        last_left = samples[0]
        last_right = samples[1]
        v = new_state.lateral_speed_mps
        r = new_state.yaw_rate_radps
        station += u * dt
    return racks, lefts, rights, states, degraded


def simulate(log: DrivingLog, vehicle: VehicleParams, tire: TireParams,
             variants=(ModelVariant.RR,), *, cleats=(),
             slope_mode: SlopeMode = SlopeMode.LATERAL) -> list[EstimateSample]:
    """Run the requested variants over a log and zip the per-step samples.

    Parameters are validated up front; module errors raised mid-run carry
    the offending timestep index.  Returns one ``EstimateSample`` per log
    row, time strictly increasing.
    """
    validate_params(vehicle, tire)
    variants = tuple(dict.fromkeys(variants))
    if not variants:
        raise ParameterError("at least one model variant required",
                             category="NoVariants")
    runs = {
        variant: _run_variant(log, vehicle, tire, cleats, slope_mode,
                              road_aware=variant is ModelVariant.RR)
        for variant in variants
    }
    detail_from = ModelVariant.RR if ModelVariant.RR in runs else variants[0]
    _, lefts, rights, states, degraded = runs[detail_from]

    samples = []
    for i in range(len(log)):
        rack_map = MappingProxyType(
            {variant: float(runs[variant][0][i]) for variant in variants})
        measured = None
        if log.measured_rack_N is not None:
            measured = float(log.measured_rack_N[i])
        samples.append(EstimateSample(
            time_s=float(log.time_s[i]),
            steer_angle_rad=float(log.steer_angle_rad[i]),
            speed_mps=float(log.speed_mps[i]),
            lateral_slope_rad=float(log.lateral_slope_rad[i]),
            longitudinal_slope_rad=float(log.longitudinal_slope_rad[i]),
            lateral_speed_mps=float(states[i][0]),
            yaw_rate_radps=float(states[i][1]),
            left=lefts[i],
            right=rights[i],
            rack_force_N=rack_map,
            degraded=bool(degraded[i]),
            measured_rack_N=measured))
    return samples


def mean_absolute_error(estimates, measurements) -> float:
    """Mean absolute difference between two equal-length series, in the
    units of the inputs."""
    est = np.asarray(estimates, dtype=float)
    meas = np.asarray(measurements, dtype=float)
    if est.shape != meas.shape or est.ndim != 1:
        raise LengthMismatch(
            f"series shapes differ: {est.shape} vs {meas.shape}")
    if len(est) == 0:
        raise EmptySeries("cannot average zero samples")
    if not (np.all(np.isfinite(est)) and np.all(np.isfinite(meas))):
        raise NumericError("series must be finite")
    return float(np.mean(np.abs(est - meas)))
