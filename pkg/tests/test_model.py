import dataclasses

import pytest

from thermoact.model import (ActuatorSpec, Drive, Environment, Geometry,
                             InvalidSpecError, Material, default_spec,
                             validate)


def test_default_spec_is_the_reference_device():
    spec = default_spec()
    assert spec.geometry.hot_arm_length == 750.0e-6
    assert spec.geometry.cold_arm_length == 345.0e-6  # 0.46 of the hot arm
    assert spec.geometry.gap == 5.0e-6
    assert spec.geometry.beam_width == 2.8e-6
    assert spec.geometry.beam_thickness == 2.0e-6
    assert spec.geometry.extension_length == 40.0e-6
    assert spec.geometry.pad_side == 200.0e-6
    assert spec.material.young_modulus == 158.0e9
    assert spec.material.poisson_ratio == 0.066
    assert spec.material.thermal_conductivity == 41.0
    assert spec.material.expansion_coefficient == 2.7e-6
    assert spec.material.resistivity == 5.0e-4
    assert spec.material.density == 2320.0
    assert spec.material.specific_heat == 700.0
    assert spec.environment.convection_coefficient == 50.0
    assert spec.environment.ambient_temperature == 20.0
    assert spec.drive.voltage == 8.0


def test_validate_returns_the_spec_unchanged():
    spec = default_spec()
    assert validate(spec) is spec


def test_specs_are_frozen():
    spec = default_spec()
    with pytest.raises(dataclasses.FrozenInstanceError):
        spec.drive = Drive(voltage=1.0)
    with pytest.raises(dataclasses.FrozenInstanceError):
        spec.geometry.gap = 1.0e-6


def test_cold_arm_longer_than_hot_arm_is_rejected():
    with pytest.raises(InvalidSpecError) as err:
        ActuatorSpec(geometry=Geometry(hot_arm_length=300.0e-6,
                                       cold_arm_length=400.0e-6))
    assert "cold_arm_length exceeds hot_arm_length" in err.value.diagnostics


def test_equal_arm_lengths_are_allowed():
    spec = ActuatorSpec(geometry=Geometry(hot_arm_length=400.0e-6,
                                          cold_arm_length=400.0e-6))
    assert spec.geometry.cold_arm_length == spec.geometry.hot_arm_length


@pytest.mark.parametrize("field", ["hot_arm_length", "cold_arm_length", "gap",
                                   "beam_width", "beam_thickness",
                                   "extension_length", "pad_side"])
def test_nonpositive_geometry_is_rejected(field):
    for bad in (0.0, -1.0e-6):
        with pytest.raises(InvalidSpecError) as err:
            ActuatorSpec(geometry=Geometry(**{field: bad}))
        assert any(field in d for d in err.value.diagnostics)


@pytest.mark.parametrize("field", ["young_modulus", "density",
                                   "thermal_conductivity",
                                   "expansion_coefficient", "specific_heat",
                                   "resistivity"])
def test_nonpositive_material_is_rejected(field):
    with pytest.raises(InvalidSpecError) as err:
        ActuatorSpec(material=Material(**{field: 0.0}))
    assert any(field in d for d in err.value.diagnostics)


def test_poisson_ratio_bounds():
    ActuatorSpec(material=Material(poisson_ratio=0.0))  # boundary is fine
    for bad in (-0.01, 0.5, 0.6):
        with pytest.raises(InvalidSpecError):
            ActuatorSpec(material=Material(poisson_ratio=bad))


def test_drive_accepts_zero_but_not_negative_voltage():
    ActuatorSpec(drive=Drive(voltage=0.0))
    with pytest.raises(InvalidSpecError) as err:
        ActuatorSpec(drive=Drive(voltage=-2.0))
    assert any("voltage" in d for d in err.value.diagnostics)


def test_convection_zero_is_valid_and_negative_is_not():
    ActuatorSpec(environment=Environment(convection_coefficient=0.0))
    with pytest.raises(InvalidSpecError):
        ActuatorSpec(environment=Environment(convection_coefficient=-5.0))


def test_all_violations_are_collected_at_once():
    """One bad spec should name every problem, not stop at the first."""
    with pytest.raises(InvalidSpecError) as err:
        ActuatorSpec(
            material=Material(young_modulus=-1.0, resistivity=0.0),
            geometry=Geometry(gap=-1.0e-6),
            drive=Drive(voltage=-1.0),
        )
    text = err.value.diagnostics
    assert len(text) == 4
    for needle in ("young_modulus", "resistivity", "gap", "voltage"):
        assert any(needle in d for d in text)
