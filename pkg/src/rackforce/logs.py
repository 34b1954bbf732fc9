"""Driving log ingestion and resampling.

A driving log is the steer/speed record of one run, resampled onto a
uniform grid together with the (typically slower) road-slope record and an
optional measured rack force channel.  File formats:

    log CSV    t_s,delta_rad,u_mps[,rack_N]
    slope CSV  t_s,theta_lat_rad,theta_long_rad

Source files may be sampled at any rate with strictly increasing
timestamps; ingestion merges everything onto one grid by linear
interpolation.  Grid points that coincide with source timestamps reproduce
the source values exactly, so resampling a log already on the target grid
is lossless.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import (EmptyLog, InputError, LengthMismatch, NonMonotonicTime,
                     RateOutOfRange)

LOG_COLUMNS = ("t_s", "delta_rad", "u_mps")
LOG_OPTIONAL = ("rack_N",)
SLOPE_COLUMNS = ("t_s", "theta_lat_rad", "theta_long_rad")

#: Supported resampling band in hertz.
MIN_RATE_HZ = 50.0
MAX_RATE_HZ = 1000.0

#: Grid uniformity tolerance in seconds.
_UNIFORM_TOL_S = 1e-6


@dataclass(frozen=True)
class DrivingLog:
    """One run on a uniform time grid, all channels equal length."""

    time_s: np.ndarray
    steer_angle_rad: np.ndarray
    speed_mps: np.ndarray
    lateral_slope_rad: np.ndarray
    longitudinal_slope_rad: np.ndarray
    rate_hz: float
    measured_rack_N: np.ndarray | None = None

    def __post_init__(self):
        if not MIN_RATE_HZ <= self.rate_hz <= MAX_RATE_HZ:
            raise RateOutOfRange(
                f"rate_hz must lie in [{MIN_RATE_HZ}, {MAX_RATE_HZ}], "
                f"got {self.rate_hz}")
        channels = [self.time_s, self.steer_angle_rad, self.speed_mps,
                    self.lateral_slope_rad, self.longitudinal_slope_rad]
        if self.measured_rack_N is not None:
            channels.append(self.measured_rack_N)
        n = len(self.time_s)
        if n == 0:
            raise EmptyLog("log has no samples")
        for ch in channels:
            if np.asarray(ch).ndim != 1:
                raise InputError("log channels must be one-dimensional",
                                 category="SchemaError")
            if len(ch) != n:
                raise LengthMismatch(
                    f"log channels must share length {n}, got {len(ch)}")
            if not np.all(np.isfinite(ch)):
                raise InputError("log channels must be finite",
                                 category="NonFiniteValue")
        dt = np.diff(self.time_s)
        if np.any(dt <= 0):
            raise NonMonotonicTime("time_s must be strictly increasing")
        if n > 1 and np.max(np.abs(dt - 1.0 / self.rate_hz)) > _UNIFORM_TOL_S:
            raise NonMonotonicTime(
                f"time_s must be uniform at {self.rate_hz} Hz",
                category="NonUniformTime")

    def __len__(self) -> int:
        return len(self.time_s)


def resample_linear(t_src, y_src, t_dst) -> np.ndarray:
    """Linear interpolation onto a new grid, edge values held outside the
    source span.  Exact where grids coincide."""
    t_src = np.asarray(t_src, dtype=float)
    y_src = np.asarray(y_src, dtype=float)
    if len(t_src) != len(y_src):
        raise LengthMismatch(
            f"source series lengths differ: {len(t_src)} vs {len(y_src)}")
    if len(t_src) == 0:
        raise EmptyLog("cannot resample an empty series")
    if np.any(np.diff(t_src) <= 0):
        raise NonMonotonicTime("source timestamps must be strictly increasing")
    return np.interp(np.asarray(t_dst, dtype=float), t_src, y_src)


def _read_table(path, required, optional=()):
    """Read a CSV with an exact header into per-column float arrays."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(h.strip() for h in next(reader))
        except StopIteration:
            raise InputError(f"{path}: no header row", category="SchemaError")
        if header != tuple(required) and header != tuple(required) + tuple(optional):
            raise InputError(
                f"{path}: columns must be {','.join(required)}"
                f"[,{','.join(optional)}], got {','.join(header)}",
                category="SchemaError")
        columns = [[] for _ in header]
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise InputError(
                    f"{path}:{lineno}: expected {len(header)} fields, "
                    f"got {len(row)}", category="SchemaError")
            for col, cell in zip(columns, row):
                try:
                    col.append(float(cell))
                except ValueError:
                    raise InputError(f"{path}:{lineno}: non-numeric field "
                                     f"{cell!r}", category="SchemaError")
    return header, [np.asarray(col, dtype=float) for col in columns]


def _check_series(path, t: np.ndarray) -> None:
    if len(t) == 0:
        raise EmptyLog(f"{path}: no data rows")
    if np.any(np.diff(t) <= 0):
        raise NonMonotonicTime(f"{path}: t_s must be strictly increasing")


def ingest(log_path, slope_path=None, rate_hz: float = 250.0) -> DrivingLog:
    """Load a log file, merge the slope record, resample to ``rate_hz``.

    The output grid starts at the log's first timestamp and covers its full
    span at the requested rate.  Slope channels default to zero when no
    slope file is given; a measured rack column is carried through when
    present.
    """
    if not MIN_RATE_HZ <= rate_hz <= MAX_RATE_HZ:
        raise RateOutOfRange(
            f"rate_hz must lie in [{MIN_RATE_HZ}, {MAX_RATE_HZ}], got {rate_hz}")
    header, cols = _read_table(log_path, LOG_COLUMNS, LOG_OPTIONAL)
    t_src = cols[0]
    _check_series(log_path, t_src)
    if not all(np.all(np.isfinite(c)) for c in cols):
        raise InputError(f"{log_path}: values must be finite",
                         category="NonFiniteValue")

    dt = 1.0 / rate_hz
    span = float(t_src[-1] - t_src[0])
    n = int(math.floor(span / dt + 1e-9)) + 1
    time = t_src[0] + dt * np.arange(n)

    steer = resample_linear(t_src, cols[1], time)
    speed = resample_linear(t_src, cols[2], time)
    rack = None
    if len(header) == len(LOG_COLUMNS) + 1:
        rack = resample_linear(t_src, cols[3], time)

    if slope_path is not None:
        _, scols = _read_table(slope_path, SLOPE_COLUMNS)
        _check_series(slope_path, scols[0])
        if not all(np.all(np.isfinite(c)) for c in scols):
            raise InputError(f"{slope_path}: values must be finite",
                             category="NonFiniteValue")
        lat = resample_linear(scols[0], scols[1], time)
        long_ = resample_linear(scols[0], scols[2], time)
    else:
        lat = np.zeros(n)
        long_ = np.zeros(n)

    return DrivingLog(time, steer, speed, lat, long_, rate_hz,
                      measured_rack_N=rack)
