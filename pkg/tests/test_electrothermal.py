import dataclasses
import math

import numpy as np
import pytest

from thermoact.electrothermal import (PLATEAU_THRESHOLD, arm_elongations,
                                      current_density, fd_temperature_oracle,
                                      rise_integral, solve_temperature_profile,
                                      temperature_at)
from thermoact.model import (ActuatorSpec, Drive, Environment, Geometry,
                             default_spec)


def _with(spec, **geometry):
    return dataclasses.replace(spec,
                               geometry=dataclasses.replace(spec.geometry, **geometry))


def _beta_for_decay(spec, target_m_times_path):
    """Convection coefficient giving a chosen decay-parameter x path product."""
    g = spec.geometry
    path = g.hot_arm_length + g.gap + g.cold_arm_length
    m = target_m_times_path / path
    k = spec.material.thermal_conductivity
    return m * m * k * g.beam_width * g.beam_thickness \
        / (2.0 * (g.beam_thickness + g.beam_width))


def _adaptive_trapezoid(f, a, b, tol):
    fa, fb = f(a), f(b)

    def recurse(x0, f0, x1, f1, whole, tol):
        xm = 0.5 * (x0 + x1)
        fm = f(xm)
        left = 0.25 * (x1 - x0) * (f0 + fm)
        right = 0.25 * (x1 - x0) * (fm + f1)
        if abs(left + right - whole) <= 3.0 * tol:
            return left + right + (left + right - whole) / 3.0
        return recurse(x0, f0, xm, fm, left, 0.5 * tol) \
            + recurse(xm, fm, x1, f1, right, 0.5 * tol)

    return recurse(a, fa, b, fb, 0.5 * (b - a) * (fa + fb), tol)


def test_current_density_against_hand_calculation():
    spec = default_spec()
    j = current_density(spec)
    # route 1: voltage over resistivity times path length
    path = (750.0 + 5.0 + 345.0) * 1.0e-6
    assert j == pytest.approx(8.0 / (5.0e-4 * path), rel=1.0e-12)
    # route 2: through the loop resistance and cross-section
    area = 2.8e-6 * 2.0e-6
    resistance = 5.0e-4 * path / area
    assert j == pytest.approx(8.0 / resistance / area, rel=1.0e-12)


def test_profile_reports_the_convective_regime_by_default():
    profile = solve_temperature_profile(default_spec())
    assert profile.regime == "convective"
    assert profile.path_length == pytest.approx(1.100e-3, rel=1.0e-12)
    assert math.isfinite(profile.source_plateau)


def test_ends_are_clamped_exactly_at_ambient():
    profile = solve_temperature_profile(default_spec())
    assert temperature_at(profile, 0.0) == 20.0
    assert temperature_at(profile, profile.path_length) == 20.0


def test_profile_is_symmetric_about_midspan():
    profile = solve_temperature_profile(default_spec())
    path = profile.path_length
    for frac in (0.1, 0.25, 0.4, 0.47):
        left = temperature_at(profile, frac * path)
        right = temperature_at(profile, (1.0 - frac) * path)
        assert left == pytest.approx(right, rel=1.0e-12)


def test_interior_is_hotter_than_ambient():
    profile = solve_temperature_profile(default_spec())
    xs = np.linspace(0.0, profile.path_length, 101)[1:-1]
    assert np.all(temperature_at(profile, xs) > profile.ambient)


def test_out_of_range_coordinates_raise():
    profile = solve_temperature_profile(default_spec())
    for bad in (-1.0e-9, profile.path_length * 1.0001):
        with pytest.raises(ValueError):
            temperature_at(profile, bad)
        with pytest.raises(ValueError):
            rise_integral(profile, bad)


def test_closed_form_satisfies_the_heat_balance_pointwise():
    """Substitute the closed form back into the fin equation with a
    finite-difference second derivative; the residual should be at the
    truncation level, far below any term in the balance."""
    spec = default_spec()
    profile = solve_temperature_profile(spec)
    g, mat, env = spec.geometry, spec.material, spec.environment
    loss = 2.0 * (g.beam_thickness + g.beam_width) * env.convection_coefficient \
        / (g.beam_width * g.beam_thickness)
    h = profile.path_length / 4096.0
    xs = np.linspace(h, profile.path_length - h, 257)
    rise = temperature_at(profile, xs) - profile.ambient
    curvature = (temperature_at(profile, xs - h) - 2.0 * (rise + profile.ambient)
                 + temperature_at(profile, xs + h)) / h ** 2
    residual = mat.thermal_conductivity * curvature + profile.heating_rate \
        - loss * rise
    assert np.max(np.abs(residual)) / profile.heating_rate < 1.0e-5


def test_matches_finite_difference_oracle():
    spec = default_spec()
    profile = solve_temperature_profile(spec)
    xs, temps = fd_temperature_oracle(spec, nodes=4097)
    closed = temperature_at(profile, xs)
    scale = np.max(np.abs(temps - profile.ambient))
    assert np.max(np.abs(closed - temps)) / scale < 1.0e-7


def test_fd_oracle_converges_at_second_order():
    spec = default_spec()
    profile = solve_temperature_profile(spec)
    errors = []
    for nodes in (257, 513, 1025):
        xs, temps = fd_temperature_oracle(spec, nodes=nodes)
        errors.append(np.max(np.abs(temperature_at(profile, xs) - temps)))
    assert errors[0] / errors[1] > 3.5
    assert errors[1] / errors[2] > 3.5


def test_fd_oracle_rejects_degenerate_meshes():
    with pytest.raises(ValueError):
        fd_temperature_oracle(default_spec(), nodes=2)


def test_no_side_loss_gives_the_parabolic_profile():
    spec = dataclasses.replace(
        default_spec(), environment=Environment(convection_coefficient=0.0))
    profile = solve_temperature_profile(spec)
    assert profile.regime == "conduction-only"
    assert profile.source_plateau == math.inf
    xs, temps = fd_temperature_oracle(spec, nodes=513)
    closed = temperature_at(profile, xs)
    scale = np.max(np.abs(temps - profile.ambient))
    # central differences are exact on a parabola, so only rounding is left
    assert np.max(np.abs(closed - temps)) / scale < 1.0e-9


def test_branches_agree_at_the_regime_threshold():
    """Just below the threshold the conduction-only branch must continue
    the convective one; evaluate the convective series directly here."""
    spec = default_spec()
    beta = _beta_for_decay(spec, 0.999 * PLATEAU_THRESHOLD)
    spec = dataclasses.replace(
        spec, environment=Environment(convection_coefficient=beta))
    profile = solve_temperature_profile(spec)
    assert profile.regime == "conduction-only"
    m = profile.decay_parameter
    b = m * profile.path_length / 2.0
    xs = np.linspace(0.0, profile.path_length, 101)[1:-1]
    u = m * xs - b
    convective = profile.source_plateau * np.expm1(u - b) * np.expm1(-u - b) \
        / (1.0 + math.exp(-2.0 * b))
    parabolic = temperature_at(profile, xs) - profile.ambient
    assert np.max(np.abs(convective - parabolic) / parabolic) < 1.0e-9


def test_strong_cooling_reaches_the_plateau_without_overflow():
    """decay parameter x path of 200 would overflow cosh; the factored
    form must stay finite and flat-top at the source temperature."""
    spec = default_spec()
    beta = _beta_for_decay(spec, 200.0)
    spec = dataclasses.replace(
        spec, environment=Environment(convection_coefficient=beta))
    profile = solve_temperature_profile(spec)
    mid = temperature_at(profile, profile.path_length / 2.0)
    rise = mid - profile.ambient
    assert math.isfinite(mid)
    assert rise == pytest.approx(profile.source_plateau, rel=1.0e-10)
    assert temperature_at(profile, 0.0) == profile.ambient


def test_more_convection_means_cooler_everywhere_inside():
    spec = default_spec()
    xs = None
    previous = None
    for beta in (25.0, 50.0, 100.0):
        cooled = dataclasses.replace(
            spec, environment=Environment(convection_coefficient=beta))
        profile = solve_temperature_profile(cooled)
        if xs is None:
            xs = np.linspace(0.0, profile.path_length, 12)[1:-1]
        rise = temperature_at(profile, xs) - profile.ambient
        if previous is not None:
            assert np.all(rise < previous)
        previous = rise


def test_temperature_rise_scales_exactly_with_voltage_squared():
    spec = default_spec()
    profile_2 = solve_temperature_profile(
        dataclasses.replace(spec, drive=Drive(voltage=2.0)))
    profile_4 = solve_temperature_profile(
        dataclasses.replace(spec, drive=Drive(voltage=4.0)))
    # doubling the voltage multiplies the source exactly by four
    assert 4.0 * profile_2.source_plateau == profile_4.source_plateau
    assert profile_2.decay_parameter == profile_4.decay_parameter
    xs = np.linspace(0.0, profile_2.path_length, 11)
    # the rise integral, which the mechanics consumes, scales to the bit
    assert np.array_equal(4.0 * rise_integral(profile_2, xs),
                          rise_integral(profile_4, xs))
    # through temperature_at the ambient is added and subtracted again,
    # which costs one rounding at most
    rise_2 = temperature_at(profile_2, xs) - profile_2.ambient
    rise_4 = temperature_at(profile_4, xs) - profile_4.ambient
    np.testing.assert_allclose(4.0 * rise_2, rise_4, rtol=1.0e-14)


def test_rise_integral_against_adaptive_trapezoid():
    spec = default_spec()
    profile = solve_temperature_profile(spec)

    def rise(x):
        return temperature_at(profile, x) - profile.ambient

    for upto in (spec.geometry.cold_arm_length, spec.geometry.hot_arm_length,
                 profile.path_length):
        reference = _adaptive_trapezoid(rise, 0.0, upto,
                                        1.0e-10 * profile.source_plateau * upto)
        assert rise_integral(profile, upto) == pytest.approx(reference, rel=1.0e-8)


def test_rise_integral_over_conduction_only_profile():
    spec = dataclasses.replace(
        default_spec(), environment=Environment(convection_coefficient=0.0))
    profile = solve_temperature_profile(spec)

    def rise(x):
        return temperature_at(profile, x) - profile.ambient

    upto = spec.geometry.hot_arm_length
    scale = rise(profile.path_length / 2.0) * upto
    reference = _adaptive_trapezoid(rise, 0.0, upto, 1.0e-10 * scale)
    assert rise_integral(profile, upto) == pytest.approx(reference, rel=1.0e-8)


def test_arm_elongations_come_from_the_rise_integral():
    spec = default_spec()
    profile = solve_temperature_profile(spec)
    load = arm_elongations(profile, spec.geometry, spec.material)
    alpha = spec.material.expansion_coefficient
    assert load.hot_elongation == alpha * rise_integral(
        profile, spec.geometry.hot_arm_length)
    assert load.cold_elongation == alpha * rise_integral(
        profile, spec.geometry.cold_arm_length)
    assert load.hot_elongation > load.cold_elongation > 0.0


def test_equal_arms_elongate_identically_to_the_bit():
    spec = ActuatorSpec(geometry=Geometry(hot_arm_length=400.0e-6,
                                          cold_arm_length=400.0e-6))
    profile = solve_temperature_profile(spec)
    load = arm_elongations(profile, spec.geometry, spec.material)
    assert load.hot_elongation == load.cold_elongation


def test_elongation_rejects_mismatched_geometry():
    spec = default_spec()
    profile = solve_temperature_profile(spec)
    other = _with(spec, hot_arm_length=500.0e-6).geometry
    with pytest.raises(ValueError):
        arm_elongations(profile, other, spec.material)


def test_zero_voltage_means_no_heating_at_all():
    spec = dataclasses.replace(default_spec(), drive=Drive(voltage=0.0))
    profile = solve_temperature_profile(spec)
    xs = np.linspace(0.0, profile.path_length, 33)
    assert np.all(temperature_at(profile, xs) == profile.ambient)
    assert rise_integral(profile, profile.path_length) == 0.0
