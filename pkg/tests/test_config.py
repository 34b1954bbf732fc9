"""YAML configuration parsing and validation."""

import pytest
import yaml

import rackforce as rf
from rackforce import InputError, ParameterError, SlopeMode
from rackforce.config import config_template, load_config, parse_config

from conftest import write_config


def test_empty_config_gives_defaults():
    vehicle, tire, mode = parse_config(None)
    assert vehicle == rf.default_vehicle()
    assert tire == rf.default_tire()
    assert mode is SlopeMode.LATERAL
    assert parse_config({}) == (vehicle, tire, mode)


def test_template_round_trips_to_defaults():
    vehicle, tire, mode = parse_config(config_template())
    assert vehicle == rf.default_vehicle()
    assert tire == rf.default_tire()
    assert mode is SlopeMode.LATERAL


def test_template_file_round_trip(tmp_path):
    path = write_config(tmp_path / "car.yaml")
    vehicle, tire, mode = load_config(path)
    assert vehicle == rf.default_vehicle()
    assert tire == rf.default_tire()
    assert mode is SlopeMode.LATERAL


def test_shipped_default_config_matches_code_defaults():
    import pathlib
    path = pathlib.Path(__file__).resolve().parents[1] / "configs" / "default.yaml"
    vehicle, tire, mode = load_config(path)
    assert vehicle == rf.default_vehicle()
    assert tire == rf.default_tire()
    assert mode is SlopeMode.LATERAL


def test_partial_override_keeps_other_defaults():
    vehicle, tire, mode = parse_config({
        "vehicle": {"mass_kg": 2000.0},
        "tire": {"mf_lateral": {"b_y": {"p0": 11.0}}},
        "slope_mode": "longitudinal",
    })
    assert vehicle.mass_kg == 2000.0
    assert vehicle.dist_cg_front_m == rf.default_vehicle().dist_cg_front_m
    assert tire.mf_lateral.b_y.p0 == 11.0
    assert tire.mf_lateral.b_y.p1 == rf.default_tire().mf_lateral.b_y.p1
    assert tire.mf_lateral.b_y.load == "fcn"
    assert tire.mf_trail == rf.default_tire().mf_trail
    assert mode is SlopeMode.LONGITUDINAL


def test_cam_and_scalar_tire_overrides():
    _, tire, _ = parse_config({
        "tire": {"vertical_stiffness_Npm": 250000.0,
                 "cam": {"half_length_m": 0.12, "exponent": 3.0}}})
    assert tire.vertical_stiffness_Npm == 250000.0
    assert tire.cam.half_length_m == 0.12
    assert tire.cam.exponent == 3.0
    assert tire.cam.spacing_m == rf.default_tire().cam.spacing_m


def test_load_channel_override():
    _, tire, _ = parse_config({
        "tire": {"mf_lateral": {"b_y": {"load": "fz"}}}})
    assert tire.mf_lateral.b_y.load == "fz"


@pytest.mark.parametrize("tree,key", [
    ({"vehicel": {}}, "vehicel"),
    ({"vehicle": {"mass": 1.0}}, "vehicle.mass"),
    ({"tire": {"q_fz9": 1.0}}, "tire.q_fz9"),
    ({"tire": {"mf_lateral": {"b_z": {}}}}, "tire.mf_lateral.b_z"),
    ({"tire": {"mf_lateral": {"b_y": {"p9": 1.0}}}}, "tire.mf_lateral.b_y.p9"),
    ({"tire": {"cam": {"radius_m": 1.0}}}, "tire.cam.radius_m"),
])
def test_unknown_keys_rejected_with_path(tree, key):
    with pytest.raises(InputError) as err:
        parse_config(tree)
    assert err.value.category == "UnknownConfigKey"
    assert key in str(err.value)


@pytest.mark.parametrize("tree", [
    {"vehicle": {"mass_kg": "heavy"}},
    {"vehicle": {"mass_kg": True}},
    {"vehicle": {"mass_kg": None}},
    {"vehicle": 3.0},
    {"tire": {"mf_lateral": {"b_y": 5.0}}},
    {"tire": {"mf_lateral": {"b_y": {"load": 3}}}},
    {"slope_mode": "diagonal"},
    {"slope_mode": 1},
])
def test_schema_violations_rejected(tree):
    with pytest.raises(InputError) as err:
        parse_config(tree)
    assert err.value.category == "SchemaError"


def test_integer_leaves_coerce_to_float():
    vehicle, _, _ = parse_config({"vehicle": {"mass_kg": 2000}})
    assert vehicle.mass_kg == 2000.0
    assert isinstance(vehicle.mass_kg, float)


def test_config_values_are_validated():
    with pytest.raises(ParameterError) as err:
        parse_config({"vehicle": {"mass_kg": -1.0}})
    assert err.value.category == "NonPositiveMass"
    with pytest.raises(ParameterError) as err:
        parse_config({"tire": {"cam": {"spacing_m": 0.0}}})
    assert err.value.category == "InvalidCamGeometry"


def test_load_config_reports_yaml_errors(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("vehicle: [unclosed\n")
    with pytest.raises(InputError) as err:
        load_config(path)
    assert err.value.category == "SchemaError"


def test_template_covers_every_parameter_field():
    import dataclasses
    tree = config_template()
    assert set(tree["vehicle"]) == {f.name for f in
                                    dataclasses.fields(rf.VehicleParams)}
    tire_fields = {f.name for f in dataclasses.fields(rf.TireParams)}
    assert set(tree["tire"]) == tire_fields
    assert set(tree["tire"]["cam"]) == {f.name for f in
                                        dataclasses.fields(rf.CamGeometry)}
    # the template itself must be serializable YAML
    assert yaml.safe_load(yaml.safe_dump(tree)) == tree
