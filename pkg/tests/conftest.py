"""Shared fixtures and synthetic-input builders for the test suite."""

import csv
import math

import numpy as np
import pytest
import yaml

import rackforce as rf


@pytest.fixture
def vehicle():
    return rf.default_vehicle()


@pytest.fixture
def tire():
    return rf.default_tire()


def _series(value, n):
    if callable(value):
        return np.asarray([float(value(i)) for i in range(n)])
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        return np.full(n, float(arr))
    return arr


def make_log(duration_s, rate_hz=250.0, steer=0.0, speed=8.0, lat=0.0,
             long_=0.0, rack=None) -> rf.DrivingLog:
    """Uniform-grid log from scalars, arrays, or index callables."""
    n = int(round(duration_s * rate_hz))
    t = np.arange(n) / rate_hz
    measured = None if rack is None else _series(rack, n)
    return rf.DrivingLog(t, _series(steer, n), _series(speed, n),
                         _series(lat, n), _series(long_, n), rate_hz,
                         measured_rack_N=measured)


def fmt(x) -> str:
    return repr(float(x))


def write_log_csv(path, t, delta, u, rack=None):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        if rack is None:
            w.writerow(["t_s", "delta_rad", "u_mps"])
            for row in zip(t, delta, u):
                w.writerow([fmt(v) for v in row])
        else:
            w.writerow(["t_s", "delta_rad", "u_mps", "rack_N"])
            for row in zip(t, delta, u, rack):
                w.writerow([fmt(v) for v in row])
    return path


def write_slope_csv(path, t, lat, long_):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t_s", "theta_lat_rad", "theta_long_rad"])
        for row in zip(t, lat, long_):
            w.writerow([fmt(v) for v in row])
    return path


def write_cleat_csv(path, rows):
    """rows: iterables of (start_m, length_m, height_m, width_m, yaw_deg)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["start_m", "length_m", "height_m", "width_m", "yaw_deg"])
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path


def write_config(path, tree=None):
    from rackforce.config import config_template
    with open(path, "w") as fh:
        yaml.safe_dump(config_template() if tree is None else tree, fh,
                       sort_keys=False)
    return path


def slalom_cleat_setup():
    """Recreates the thirteen-cleat slalom scenario: 4 cleats of 1 cm, 5 of
    2 cm, 4 of 3 cm, crossed obliquely under a +/-50 degree slalom at
    8.8 m/s.  Returns (log, cleats, cleat_stations)."""
    rate = 250.0
    n = int(60.0 * rate)
    t = np.arange(n) / rate
    delta = math.radians(50.0) * np.sin(2 * np.pi * 0.25 * t)
    heights = [0.01] * 4 + [0.02] * 5 + [0.03] * 4
    starts = [30.0 + 32.0 * k for k in range(13)]
    cleats = tuple(rf.CleatSpec(s0, 0.35, h, 6.0, math.radians(25.0))
                   for s0, h in zip(starts, heights))
    log = rf.DrivingLog(t, delta, np.full(n, 8.8), np.zeros(n), np.zeros(n),
                        rate)
    return log, cleats, starts
