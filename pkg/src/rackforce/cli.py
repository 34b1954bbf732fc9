"""Command line runner: replay a driving log and write estimate artifacts.

    rackforce --config car.yaml --log run.csv [--slopes imu.csv]
              [--cleats track.csv] --out results/ [--variants rr,fr]
              [--rate-hz 250] [--settle-s 1.0]

Writes three files into the output directory:

    estimates.csv   one row per timestep: input echo, body state, per-tire
                    detail, one rack column per variant, measurement echo
    metrics.json    variant -> MAE map (when measurements are present),
                    sample counts, settling window
    plot.csv        time, measurement, per-variant estimates

Exit codes: 0 success, 2 input/config error, 3 numeric failure.  Errors
print one line to stderr, ``Category: detail``, and write nothing partial:
all outputs are built in memory first.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys

import numpy as np

from .config import load_config
from .errors import EmptySeries, InputError, NumericError, RackForceError
from .logs import ingest
from .road import load_cleats
from .simulate import ModelVariant, mean_absolute_error, simulate

ESTIMATE_FILE = "estimates.csv"
METRICS_FILE = "metrics.json"
PLOT_FILE = "plot.csv"

_TIRE_FIELDS = ("w_m", "beta_x_rad", "beta_y_rad", "fz_N", "za_m", "rho_z_m",
                "fz_rad_N", "fyn_N", "fcn_N", "fy_N", "trail_m", "mz_Nm")


def _fmt(value: float) -> str:
    """Shortest round-trip decimal form; stable across runs by design."""
    return repr(float(value))


def _tire_values(sample) -> list[str]:
    road = sample.road
    loads = sample.loads
    out = sample.output
    return [_fmt(v) for v in (
        road.effective_height_m, road.transverse_slope_rad,
        road.forward_slope_rad, loads.normal_force_N,
        loads.static_deflection_m, loads.radial_deflection_m,
        loads.radial_force_N, loads.non_lagging_force_N,
        loads.contact_patch_normal_N, out.lateral_force_N, out.trail_m,
        out.aligning_moment_Nm)]


def render_estimates(samples, variants) -> str:
    header = ["t_s", "delta_rad", "u_mps", "theta_lat_rad", "theta_long_rad",
              "v_mps", "yaw_rate_radps", "degraded"]
    for side in ("left", "right"):
        header += [f"{side}_{name}" for name in _TIRE_FIELDS]
    header += [f"rack_{v.value}_N" for v in variants]
    header.append("rack_meas_N")
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for s in samples:
        row = [_fmt(s.time_s), _fmt(s.steer_angle_rad), _fmt(s.speed_mps),
               _fmt(s.lateral_slope_rad), _fmt(s.longitudinal_slope_rad),
               _fmt(s.lateral_speed_mps), _fmt(s.yaw_rate_radps),
               str(int(s.degraded))]
        row += _tire_values(s.left)
        row += _tire_values(s.right)
        row += [_fmt(s.rack_force_N[v]) for v in variants]
        row.append("" if s.measured_rack_N is None else _fmt(s.measured_rack_N))
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def render_plot(samples, variants) -> str:
    header = ["t_s", "rack_meas_N"] + [f"rack_{v.value}_N" for v in variants]
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for s in samples:
        row = [_fmt(s.time_s),
               "" if s.measured_rack_N is None else _fmt(s.measured_rack_N)]
        row += [_fmt(s.rack_force_N[v]) for v in variants]
        buf.write(",".join(row) + "\n")
    return buf.getvalue()


def compute_metrics(samples, variants, settle_s: float, rate_hz: float) -> dict:
    """MAE per variant over the post-settling window, plus counts."""
    t0 = samples[0].time_s
    scored = [s for s in samples if s.time_s >= t0 + settle_s]
    has_meas = samples[0].measured_rack_N is not None
    mae = {}
    if has_meas:
        if not scored:
            raise EmptySeries(
                f"settling window {settle_s} s leaves no samples to score")
        meas = np.array([s.measured_rack_N for s in scored])
        for v in variants:
            est = np.array([s.rack_force_N[v] for s in scored])
            mae[v.value] = mean_absolute_error(est, meas)
    return {
        "mae_N": mae,
        "samples_total": len(samples),
        "samples_scored": len(scored) if has_meas else 0,
        "settle_s": settle_s,
        "rate_hz": rate_hz,
        "variants": [v.value for v in variants],
    }


def _parse_variants(spec: str) -> tuple[ModelVariant, ...]:
    variants = []
    for token in spec.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            variants.append(ModelVariant(token))
        except ValueError:
            raise InputError(
                f"unknown variant {token!r}, expected one of "
                f"{[m.value for m in ModelVariant]}", category="UnknownVariant")
    if not variants:
        raise InputError("no variants requested", category="UnknownVariant")
    return tuple(dict.fromkeys(variants))


def run(config_path, log_path, out_dir, slope_path=None, cleat_path=None,
        variants="rr,fr", rate_hz: float = 250.0,
        settle_s: float = 1.0) -> dict:
    """Execute one replay run and write all artifacts; returns metrics."""
    if settle_s < 0:
        raise InputError(f"settle_s must be >= 0, got {settle_s}",
                         category="NegativeSettle")
    requested = _parse_variants(variants) if isinstance(variants, str) \
        else tuple(variants)
    vehicle, tire, slope_mode = load_config(config_path)
    cleats = load_cleats(cleat_path) if cleat_path is not None else ()
    log = ingest(log_path, slope_path, rate_hz)
    samples = simulate(log, vehicle, tire, requested, cleats=cleats,
                       slope_mode=slope_mode)
    metrics = compute_metrics(samples, requested, settle_s, rate_hz)

    estimates_text = render_estimates(samples, requested)
    plot_text = render_plot(samples, requested)
    metrics_text = json.dumps(metrics, sort_keys=True, indent=2) + "\n"

    os.makedirs(out_dir, exist_ok=True)
    for name, text in ((ESTIMATE_FILE, estimates_text),
                       (METRICS_FILE, metrics_text), (PLOT_FILE, plot_text)):
        with open(os.path.join(out_dir, name), "w", newline="",
                  encoding="utf-8") as fh:
            fh.write(text)
    return metrics


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rackforce",
        description="Estimate steering rack force by replaying a driving log.")
    parser.add_argument("--config", required=True,
                        help="YAML parameter file (vehicle, tire, slope_mode)")
    parser.add_argument("--log", required=True,
                        help="driving log CSV: t_s,delta_rad,u_mps[,rack_N]")
    parser.add_argument("--slopes", default=None,
                        help="slope CSV: t_s,theta_lat_rad,theta_long_rad")
    parser.add_argument("--cleats", default=None,
                        help="cleat CSV: start_m,length_m,height_m,width_m,yaw_deg")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--variants", default="rr,fr",
                        help="comma-separated model variants (default rr,fr)")
    parser.add_argument("--rate-hz", type=float, default=250.0,
                        help="resampling rate in Hz (default 250)")
    parser.add_argument("--settle-s", type=float, default=1.0,
                        help="settling window excluded from MAE (default 1.0)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        metrics = run(args.config, args.log, args.out, slope_path=args.slopes,
                      cleat_path=args.cleats, variants=args.variants,
                      rate_hz=args.rate_hz, settle_s=args.settle_s)
    except NumericError as err:
        print(str(err), file=sys.stderr)
        return 3
    except RackForceError as err:
        print(str(err), file=sys.stderr)
        return 2
    except OSError as err:
        print(f"FileError: {err}", file=sys.stderr)
        return 2
    print(json.dumps(metrics, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
