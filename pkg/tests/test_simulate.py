"""Closed-loop estimation runs and the error metric."""

import dataclasses
import math

import numpy as np
import pytest

import rackforce as rf
from rackforce import (CleatSpec, EmptySeries, LengthMismatch, ModelVariant,
                       NumericError, ParameterError, SlopeOutOfRange)

from conftest import make_log

RR = ModelVariant.RR
FR = ModelVariant.FLAT_ROAD_2DOF


def rack_series(samples, variant):
    return np.array([s.rack_force_N[variant] for s in samples])


def test_flat_straight_run_is_identically_zero(vehicle, tire):
    log = make_log(2.0, steer=0.0, speed=8.0)
    samples = rf.simulate(log, vehicle, tire, (RR, FR))
    for variant in (RR, FR):
        assert np.all(rack_series(samples, variant) == 0.0)
    assert all(not s.degraded for s in samples)
    assert all(s.measured_rack_N is None for s in samples)


def test_samples_echo_inputs_and_time_increases(vehicle, tire):
    log = make_log(1.0, steer=lambda i: 0.001 * i, speed=9.0, lat=0.01,
                   rack=lambda i: float(i))
    samples = rf.simulate(log, vehicle, tire, (RR,))
    assert len(samples) == len(log)
    times = [s.time_s for s in samples]
    assert all(b > a for a, b in zip(times, times[1:]))
    assert samples[10].steer_angle_rad == log.steer_angle_rad[10]
    assert samples[10].speed_mps == 9.0
    assert samples[10].lateral_slope_rad == 0.01
    assert samples[10].measured_rack_N == 10.0
    # the recorded state is the pre-step state the tires saw
    assert samples[0].lateral_speed_mps == 0.0
    assert samples[0].yaw_rate_radps == 0.0


def test_single_sample_log_runs(vehicle, tire):
    log = rf.DrivingLog(np.array([0.0]), np.array([0.1]), np.array([8.0]),
                        np.array([0.0]), np.array([0.0]), 250.0)
    samples = rf.simulate(log, vehicle, tire, (RR,))
    assert len(samples) == 1
    assert math.isfinite(samples[0].rack_force_N[RR])


def test_variant_blindness_of_flat_road_baseline(vehicle, tire):
    kwargs = dict(duration_s=6.0, steer=lambda i: 0.2 * math.sin(i / 40.0),
                  speed=7.0)
    plain = make_log(**kwargs)
    sloped = make_log(lat=lambda i: 0.15 * math.sin(i / 100.0),
                      long_=0.05, **kwargs)
    cleats = (CleatSpec(10.0, 0.35, 0.02, 6.0, math.radians(25.0)),)
    a = rf.simulate(plain, vehicle, tire, (FR,))
    b = rf.simulate(sloped, vehicle, tire, (FR,), cleats=cleats)
    assert np.array_equal(rack_series(a, FR), rack_series(b, FR))
    # while the road-aware variant does react
    c = rf.simulate(sloped, vehicle, tire, (RR,), cleats=cleats)
    assert not np.array_equal(rack_series(a, FR), rack_series(c, RR))


def test_detail_comes_from_road_aware_variant(vehicle, tire):
    log = make_log(2.0, steer=0.05, speed=8.0, lat=0.1)
    both = rf.simulate(log, vehicle, tire, (FR, RR))
    rr_only = rf.simulate(log, vehicle, tire, (RR,))
    assert both[-1].left == rr_only[-1].left
    assert both[-1].lateral_speed_mps == rr_only[-1].lateral_speed_mps
    fr_only = rf.simulate(log, vehicle, tire, (FR,))
    assert fr_only[-1].left.road.transverse_slope_rad == 0.0
    assert both[-1].left.road.transverse_slope_rad != 0.0


def test_variants_deduplicated_and_required(vehicle, tire):
    log = make_log(0.5, steer=0.05, speed=8.0)
    samples = rf.simulate(log, vehicle, tire, (RR, RR, FR))
    assert set(samples[0].rack_force_N) == {RR, FR}
    with pytest.raises(ParameterError) as err:
        rf.simulate(log, vehicle, tire, ())
    assert err.value.category == "NoVariants"


def test_simulate_validates_params(tire):
    log = make_log(0.5, speed=8.0)
    bad = dataclasses.replace(rf.default_vehicle(), mass_kg=-1.0)
    with pytest.raises(ParameterError) as err:
        rf.simulate(log, bad, tire)
    assert err.value.category == "NonPositiveMass"


def test_degraded_low_speed_samples_hold_last(vehicle, tire):
    def speed(i):
        return 0.4 if 250 <= i < 300 else 8.0

    log = make_log(2.0, steer=0.1, speed=speed)
    samples = rf.simulate(log, vehicle, tire, (RR,))
    flags = [s.degraded for s in samples]
    assert flags[250:300] == [True] * 50
    assert not any(flags[:250]) and not any(flags[300:])
    held = samples[249].rack_force_N[RR]
    for s in samples[250:300]:
        assert s.rack_force_N[RR] == held
        assert s.left == samples[249].left
    # the run resumes evolving afterwards
    assert samples[310].rack_force_N[RR] != held


def test_degraded_from_start_emits_zero(vehicle, tire):
    log = make_log(1.0, steer=0.1,
                   speed=lambda i: 0.0 if i < 10 else 8.0)
    samples = rf.simulate(log, vehicle, tire, (RR,))
    assert all(s.degraded for s in samples[:10])
    assert all(s.rack_force_N[RR] == 0.0 for s in samples[:10])
    assert samples[0].left.loads.normal_force_N == 0.0


def test_lateral_speed_warning_fires_once(vehicle, tire):
    log = make_log(4.0, steer=1.2, speed=0.6)
    with pytest.warns(RuntimeWarning, match="lateral speed") as record:
        rf.simulate(log, vehicle, tire, (RR,))
    assert len([w for w in record
                if issubclass(w.category, RuntimeWarning)]) == 1


def test_error_mid_run_carries_timestep(vehicle, tire):
    log = make_log(4.0, steer=0.0, speed=8.0,
                   lat=lambda i: 0.9 if i >= 600 else 0.0)
    with pytest.raises(SlopeOutOfRange) as err:
        rf.simulate(log, vehicle, tire, (RR,))
    assert err.value.timestep == 600
    assert "timestep 600" in str(err.value)


def test_numeric_blowup_raises_numeric_error(tire):
    vehicle = dataclasses.replace(rf.default_vehicle(),
                                  yaw_inertia_kgm2=1e-310)
    log = make_log(1.0, steer=0.1, speed=8.0)
    with pytest.raises(NumericError) as err:
        rf.simulate(log, vehicle, tire, (RR,))
    assert err.value.timestep is not None


def test_crowned_road_ordering(vehicle, tire):
    theta = 0.19199
    log = make_log(20.0, steer=lambda i: 0.08 * math.sin(i / 120.0),
                   speed=5.5, lat=lambda i: theta * math.sin(i / 400.0))
    rr_run = rf.simulate(log, vehicle, tire, (RR,))
    measured = rack_series(rr_run, RR)
    scored = make_log(20.0, steer=lambda i: 0.08 * math.sin(i / 120.0),
                      speed=5.5, lat=lambda i: theta * math.sin(i / 400.0),
                      rack=measured)
    samples = rf.simulate(scored, vehicle, tire, (RR, FR))
    mae_rr = rf.mean_absolute_error(rack_series(samples, RR), measured)
    mae_fr = rf.mean_absolute_error(rack_series(samples, FR), measured)
    assert mae_rr == 0.0
    assert mae_fr > 0.0


def test_perpendicular_cleat_produces_no_rack_deviation(vehicle, tire):
    # symmetric crossing with zero steer: both tires see beta_x = 0, the
    # lateral force stays zero, so the rack force never deviates
    cleats = (CleatSpec(10.0, 0.04, 0.01, 6.0, 0.0),)
    log = make_log(3.0, steer=0.0, speed=8.0)
    samples = rf.simulate(log, vehicle, tire, (RR,), cleats=cleats)
    assert np.max(np.abs(rack_series(samples, RR))) <= 1.0
    crossed = [s for s in samples if s.left.loads.radial_force_N > 0.0]
    assert crossed


def test_simulate_is_deterministic(vehicle, tire):
    cleats = (CleatSpec(8.0, 0.35, 0.02, 6.0, math.radians(25.0)),)
    log = make_log(4.0, steer=lambda i: 0.3 * math.sin(i / 50.0), speed=8.0,
                   lat=0.05)
    a = rf.simulate(log, vehicle, tire, (RR, FR), cleats=cleats)
    b = rf.simulate(log, vehicle, tire, (RR, FR), cleats=cleats)
    assert a == b


def test_slope_mode_changes_coupling(vehicle, tire):
    log = make_log(3.0, steer=0.0, speed=8.0, lat=0.1, long_=0.1)
    lateral = rf.simulate(log, vehicle, tire, (RR,),
                          slope_mode=rf.SlopeMode.LATERAL)
    longitudinal = rf.simulate(log, vehicle, tire, (RR,),
                               slope_mode=rf.SlopeMode.LONGITUDINAL)
    # gravity pull only exists in lateral mode; with zero steer the
    # longitudinal-mode run stays at equilibrium
    assert np.all(rack_series(longitudinal, RR) == 0.0)
    assert np.any(rack_series(lateral, RR) != 0.0)


def test_mean_absolute_error_examples():
    assert rf.mean_absolute_error([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 0.0
    assert rf.mean_absolute_error([1.0, 2.0, 3.0], [1.0, 1.0, 5.0]) == 1.0
    assert rf.mean_absolute_error([5.0, 5.0], [2.0, 2.0]) == 3.0
    offset = rf.mean_absolute_error([0.0, 1.0, 2.0], [-1.5, -0.5, 0.5])
    assert offset == 1.5


def test_mean_absolute_error_input_contract():
    with pytest.raises(LengthMismatch):
        rf.mean_absolute_error([1.0], [1.0, 2.0])
    with pytest.raises(EmptySeries):
        rf.mean_absolute_error([], [])
    with pytest.raises(NumericError):
        rf.mean_absolute_error([math.nan], [0.0])
    with pytest.raises(LengthMismatch):
        rf.mean_absolute_error([[1.0, 2.0]], [[1.0, 2.0]])
