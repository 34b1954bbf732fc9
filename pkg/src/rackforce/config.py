"""YAML run configuration.

A config file is a key/value tree with up to three top-level sections:

    vehicle:     fields of params.VehicleParams
    tire:        fields of params.TireParams; coefficient tables nest one
                 more level, each factor a {p0, p1, p2, load} mapping
    slope_mode:  "lateral" or "longitudinal"

Any omitted key keeps its documented default; unknown keys are errors (a
typo must never silently fall back to a default).  All numeric leaves are
SI.  See configs/default.yaml for a fully spelled-out example.
"""

from __future__ import annotations

import dataclasses
from dataclasses import fields, replace

import yaml

from .errors import InputError
from .params import (CamGeometry, LoadPoly, SlopeMode, TireParams,
                     VehicleParams, default_tire, default_vehicle,
                     validate_params)


def _require_mapping(node, path: str) -> dict:
    if node is None:
        return {}
    if not isinstance(node, dict):
        raise InputError(f"config key '{path}' must be a mapping",
                         category="SchemaError")
    return node


def _float_leaf(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"config key '{path}' must be a number, "
                         f"got {value!r}", category="SchemaError")
    return float(value)


def _check_keys(data: dict, allowed, path: str) -> None:
    for key in data:
        if key not in allowed:
            raise InputError(
                f"unknown config key '{path}.{key}'" if path
                else f"unknown config key '{key}'",
                category="UnknownConfigKey")


def _build_flat(default, data, path: str):
    """Rebuild a flat all-float dataclass from a config mapping."""
    data = _require_mapping(data, path)
    names = [f.name for f in fields(default)]
    _check_keys(data, names, path)
    updates = {key: _float_leaf(value, f"{path}.{key}")
               for key, value in data.items()}
    return replace(default, **updates)


def _build_poly(default: LoadPoly, data, path: str) -> LoadPoly:
    data = _require_mapping(data, path)
    _check_keys(data, ("p0", "p1", "p2", "load"), path)
    updates = {}
    for key in ("p0", "p1", "p2"):
        if key in data:
            updates[key] = _float_leaf(data[key], f"{path}.{key}")
    if "load" in data:
        if not isinstance(data["load"], str):
            raise InputError(f"config key '{path}.load' must be a string",
                             category="SchemaError")
        updates["load"] = data["load"]
    return replace(default, **updates)


def _build_table(default, data, path: str):
    """Rebuild a dataclass whose fields are all LoadPoly."""
    data = _require_mapping(data, path)
    names = [f.name for f in fields(default)]
    _check_keys(data, names, path)
    updates = {key: _build_poly(getattr(default, key), value, f"{path}.{key}")
               for key, value in data.items()}
    return replace(default, **updates)


def _build_tire(data, path: str = "tire") -> TireParams:
    data = _require_mapping(data, path)
    default = default_tire()
    names = [f.name for f in fields(default)]
    _check_keys(data, names, path)
    updates = {}
    for key, value in data.items():
        sub = f"{path}.{key}"
        current = getattr(default, key)
        if isinstance(current, float):
            updates[key] = _float_leaf(value, sub)
        elif isinstance(current, CamGeometry):
            updates[key] = _build_flat(current, value, sub)
        else:
            updates[key] = _build_table(current, value, sub)
    return replace(default, **updates)


def parse_config(data) -> tuple[VehicleParams, TireParams, SlopeMode]:
    """Build validated parameters from an already-parsed config tree."""
    data = _require_mapping(data, "")
    _check_keys(data, ("vehicle", "tire", "slope_mode"), "")
    vehicle = _build_flat(default_vehicle(), data.get("vehicle"), "vehicle")
    tire = _build_tire(data.get("tire"))
    mode_raw = data.get("slope_mode", SlopeMode.LATERAL.value)
    try:
        mode = SlopeMode(mode_raw)
    except ValueError:
        raise InputError(
            f"slope_mode must be one of "
            f"{[m.value for m in SlopeMode]}, got {mode_raw!r}",
            category="SchemaError")
    validate_params(vehicle, tire)
    return vehicle, tire, mode


def load_config(path) -> tuple[VehicleParams, TireParams, SlopeMode]:
    """Read and validate a YAML config file."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise InputError(f"{path}: {exc}", category="SchemaError")
    return parse_config(data)


def config_template() -> dict:
    """Config tree spelling out every supported key at its default value."""
    vehicle = default_vehicle()
    tire = default_tire()

    def poly(p: LoadPoly) -> dict:
        return {"p0": p.p0, "p1": p.p1, "p2": p.p2, "load": p.load}

    def table(group) -> dict:
        return {f.name: poly(getattr(group, f.name)) for f in fields(group)}

    tree = {
        "vehicle": {f.name: getattr(vehicle, f.name)
                    for f in fields(vehicle)},
        "tire": {
            "vertical_stiffness_Npm": tire.vertical_stiffness_Npm,
            "q_fz1": tire.q_fz1,
            "q_fz2": tire.q_fz2,
            "q_fz3": tire.q_fz3,
            "mf_lateral": table(tire.mf_lateral),
            "mf_trail": table(tire.mf_trail),
            "mf_residual": table(tire.mf_residual),
            "non_lagging": table(tire.non_lagging),
            "cam": {f.name: getattr(tire.cam, f.name)
                    for f in dataclasses.fields(tire.cam)},
        },
        "slope_mode": SlopeMode.LATERAL.value,
    }
    return tree
