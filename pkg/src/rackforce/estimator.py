"""Scikit-learn style front end over the simulation pipeline.

``RackForceEstimator`` is a physics model, not a trained one: ``fit``
validates the parameter set against every documented invariant and freezes
it, ``predict`` replays a driving log through the chosen model variant and
returns the rack-force series, and ``score`` is the negated mean absolute
error so that the sklearn convention (greater is better) holds.  Cloning,
``get_params`` / ``set_params``, and grid search over physical parameters
all work as for any other estimator.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .errors import InputError, LengthMismatch, ParameterError
from .logs import DrivingLog
from .params import (SlopeMode, TireParams, VehicleParams, default_tire,
                     default_vehicle, validate_params)
from .simulate import ModelVariant, mean_absolute_error, simulate


def as_driving_log(X, rate_hz: float = 250.0) -> DrivingLog:
    """Coerce predict input into a ``DrivingLog``.

    Accepts a ``DrivingLog`` unchanged, or an array of shape (n, k) with
    columns ``t_s, delta_rad, u_mps[, theta_lat_rad[, theta_long_rad]]``;
    the time column must already be a uniform grid.  ``rate_hz`` is only
    used for single-row arrays where no spacing can be inferred.
    """
    if isinstance(X, DrivingLog):
        return X
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2 or arr.shape[1] < 3 or arr.shape[1] > 5:
        raise InputError(
            "array input must have shape (n, 3..5) with columns "
            "t_s, delta_rad, u_mps[, theta_lat_rad[, theta_long_rad]]",
            category="SchemaError")
    n = arr.shape[0]
    if n == 0:
        raise InputError("array input has no rows", category="EmptyLog")
    time = arr[:, 0]
    if n > 1:
        rate_hz = (n - 1) / (time[-1] - time[0])
    zeros = np.zeros(n)
    lat = arr[:, 3] if arr.shape[1] > 3 else zeros
    long_ = arr[:, 4] if arr.shape[1] > 4 else zeros
    return DrivingLog(time, arr[:, 1], arr[:, 2], lat, long_, rate_hz)


class RackForceEstimator(BaseEstimator):
    """Rack-force estimator with the standard estimator interface.

    Parameters
    ----------
    vehicle : VehicleParams or None
        Body and rack parameters; None selects the documented defaults.
    tire : TireParams or None
        Tire parameter set; None selects the documented defaults.
    variant : str
        Model variant, ``"rr"`` (road aware) or ``"fr"`` (flat road).
    cleats : tuple of road.CleatSpec
        Cleat map describing raised strips / potholes along the path.
    slope_mode : str
        Which slope channel couples into the body equations,
        ``"lateral"`` or ``"longitudinal"``.
    rate_hz : float
        Fallback sample rate for inputs whose rate cannot be inferred.
    """

    def __init__(self, vehicle=None, tire=None, variant="rr", cleats=(),
                 slope_mode="lateral", rate_hz=250.0):
        self.vehicle = vehicle
        self.tire = tire
        self.variant = variant
        self.cleats = cleats
        self.slope_mode = slope_mode
        self.rate_hz = rate_hz

    def fit(self, X=None, y=None):
        """Validate and freeze the configured parameter set.

        No quantity is estimated from data; ``X`` and ``y`` are accepted
        for pipeline compatibility and ignored.
        """
        vehicle = self.vehicle if self.vehicle is not None else default_vehicle()
        tire = self.tire if self.tire is not None else default_tire()
        if not isinstance(vehicle, VehicleParams):
            raise ParameterError("vehicle must be a VehicleParams instance",
                                 category="BadParameterType")
        if not isinstance(tire, TireParams):
            raise ParameterError("tire must be a TireParams instance",
                                 category="BadParameterType")
        try:
            variant = ModelVariant(self.variant)
        except ValueError:
            raise ParameterError(
                f"variant must be one of "
                f"{[m.value for m in ModelVariant]}, got {self.variant!r}",
                category="UnknownVariant")
        try:
            mode = SlopeMode(self.slope_mode)
        except ValueError:
            raise ParameterError(
                f"slope_mode must be one of "
                f"{[m.value for m in SlopeMode]}, got {self.slope_mode!r}",
                category="UnknownSlopeMode")
        validate_params(vehicle, tire)
        self.vehicle_ = vehicle
        self.tire_ = tire
        self.variant_ = variant
        self.slope_mode_ = mode
        return self

    def predict(self, X) -> np.ndarray:
        """Rack-force estimate in newtons for each log sample."""
        check_is_fitted(self, "vehicle_")
        log = as_driving_log(X, self.rate_hz)
        samples = simulate(log, self.vehicle_, self.tire_, (self.variant_,),
                           cleats=tuple(self.cleats),
                           slope_mode=self.slope_mode_)
        return np.array([s.rack_force_N[self.variant_] for s in samples])

    def score(self, X, y=None) -> float:
        """Negated MAE against measured rack force (greater is better).

        ``y`` may be omitted when the log carries its own measured
        channel.
        """
        estimates = self.predict(X)
        if y is None:
            log = as_driving_log(X, self.rate_hz)
            if log.measured_rack_N is None:
                raise LengthMismatch(
                    "score needs y or a log with a measured rack channel")
            y = log.measured_rack_N
        return -mean_absolute_error(estimates, y)
