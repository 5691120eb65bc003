"""Steady-state Joule heating of the actuator loop and the resulting
free thermal elongation of each arm.

The current path (hot arm + link + cold arm) is treated as one straight
resistive fin of length ``path_length`` with both ends clamped at the
anchor temperature.  An energy balance on a slice gives

    k w h T'' + j^2 rho w h = 2 (h + w) beta (T - T_ambient)

whose solution is a plateau at the source temperature minus a pair of
exponential boundary layers, or a parabola when there is no side-surface
heat loss.  Everything downstream needs only the pointwise rise and its
running integral, so both are exposed in closed form.

Numerical care: the textbook form 1 - cosh(m x') / cosh(m L/2) overflows
for long or strongly cooled beams and cancels catastrophically for short
ones.  Both rise and integral are therefore evaluated through expm1 with
every exponent kept non-positive, which is exact at the clamped ends and
overflow-free for any decay length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .model import ActuatorSpec, Geometry, Material

# Below this value of (decay parameter x path length) the boundary
# layers overlap completely and the convective solution is replaced by
# its conduction-only limit, a parabola.  The switch is continuous to
# well under 1e-9 relative.
PLATEAU_THRESHOLD = 1.0e-6


@dataclass(frozen=True)
class TemperatureProfile:
    """Closed-form steady temperature field along the current path.

    path_length      m, hot arm + gap + cold arm
    decay_parameter  1/m, reciprocal boundary-layer thickness
    source_plateau   C rise the mid-span approaches (inf when beta = 0)
    ambient          C
    current_density  A/m^2
    heating_rate     W/m^3, volumetric Joule source j^2 rho
    conductivity     W/(m C)
    regime           "convective" or "conduction-only"
    """

    path_length: float
    decay_parameter: float
    source_plateau: float
    ambient: float
    current_density: float
    heating_rate: float
    conductivity: float
    regime: str


@dataclass(frozen=True)
class ThermalLoad:
    """Free elongations (m) of the two arms under a temperature profile."""

    hot_elongation: float
    cold_elongation: float


def current_density(spec: ActuatorSpec) -> float:
    """Uniform current density (A/m^2) through the loop cross-section."""
    geo = spec.geometry
    path = (geo.hot_arm_length + geo.gap) + geo.cold_arm_length
    return spec.drive.voltage / (spec.material.resistivity * path)


def solve_temperature_profile(spec: ActuatorSpec) -> TemperatureProfile:
    """Solve the fin equation for ``spec`` and return the closed form."""
    geo, mat, env = spec.geometry, spec.material, spec.environment
    w, h = geo.beam_width, geo.beam_thickness
    path = (geo.hot_arm_length + geo.gap) + geo.cold_arm_length
    j = current_density(spec)
    q = j * j * mat.resistivity
    loss = 2.0 * (h + w) * env.convection_coefficient
    m = math.sqrt(loss / (mat.thermal_conductivity * w * h))
    if loss > 0.0:
        plateau = q * w * h / loss
    else:
        plateau = math.inf
    regime = "convective" if m * path >= PLATEAU_THRESHOLD else "conduction-only"
    return TemperatureProfile(
        path_length=path,
        decay_parameter=m,
        source_plateau=plateau,
        ambient=env.ambient_temperature,
        current_density=j,
        heating_rate=q,
        conductivity=mat.thermal_conductivity,
        regime=regime,
    )


def _rise(profile, x):
    """Temperature rise above ambient at path coordinate(s) x.

    Accepts a scalar or ndarray.  Uses the factored identity
    1 - cosh(u)/cosh(b) = -expm1(u-b) * -expm1(-u-b) / (1 + exp(-2b))
    with u = m x - b, b = m L / 2: every exponent is <= 0, so the value
    is exact (0.0) at both ends and finite for arbitrarily large b.
    """
    x = np.asarray(x, dtype=float)
    if profile.regime == "convective":
        b = profile.decay_parameter * (0.5 * profile.path_length)
        u = profile.decay_parameter * x - b
        shape = np.expm1(u - b) * np.expm1(-u - b) / (1.0 + math.exp(-2.0 * b))
        return profile.source_plateau * shape
    half = profile.heating_rate / (2.0 * profile.conductivity)
    return half * x * (profile.path_length - x)


def temperature_at(profile: TemperatureProfile, x) -> float:
    """Temperature (C) at path coordinate x in [0, path_length].

    x may be a scalar or an ndarray; out-of-range coordinates raise."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > profile.path_length):
        raise ValueError("path coordinate outside [0, path_length]")
    value = profile.ambient + _rise(profile, arr)
    return float(value) if np.ndim(x) == 0 else value


def rise_integral(profile: TemperatureProfile, upto) -> float:
    """Integral of the rise from the anchor at 0 to path coordinate
    ``upto``, in C m.

    Closed form in both regimes.  Scalar or ndarray argument.  This is
    the quantity the arm elongations and equivalent thermal loads are
    built from: measuring the hot arm from one anchor and the cold arm
    from the other makes the two arm integrals the same function of arm
    length, so equal arms yield an exactly zero differential.
    """
    xi = np.asarray(upto, dtype=float)
    if np.any(xi < 0.0) or np.any(xi > profile.path_length):
        raise ValueError("path coordinate outside [0, path_length]")
    if profile.regime == "convective":
        m = profile.decay_parameter
        b = m * (0.5 * profile.path_length)
        u = m * xi - b

        def anti(v):
            # antiderivative of the shape factor's cosh deficit
            return np.expm1(v - b) - np.expm1(-v - b)

        denom = m * (1.0 + math.exp(-2.0 * b))
        value = profile.source_plateau * (xi - (anti(u) - anti(-b)) / denom)
    else:
        half = profile.heating_rate / (2.0 * profile.conductivity)
        value = half * (profile.path_length * xi * xi / 2.0 - xi ** 3 / 3.0)
    return float(value) if np.ndim(upto) == 0 else value


def arm_elongations(profile: TemperatureProfile, geometry: Geometry,
                    material: Material) -> ThermalLoad:
    """Free (unrestrained) thermal elongation of hot and cold arms.

    The hot arm spans path coordinates [0, L1] from its anchor; the cold
    arm spans [0, L2] from the other anchor, which by the symmetry of
    the profile is the same integral evaluated at L2.
    """
    path = (geometry.hot_arm_length + geometry.gap) + geometry.cold_arm_length
    if path != profile.path_length:
        raise ValueError("geometry does not match the profile path length")
    alpha = material.expansion_coefficient
    return ThermalLoad(
        hot_elongation=alpha * rise_integral(profile, geometry.hot_arm_length),
        cold_elongation=alpha * rise_integral(profile, geometry.cold_arm_length),
    )


def fd_temperature_oracle(spec: ActuatorSpec, nodes: int = 4097):
    """Independent finite-difference solution of the fin equation.

    Central differences on ``nodes`` equally spaced points including
    both clamped ends, solved as a tridiagonal system.  Returns
    (positions, temperatures) as ndarrays.  Second-order accurate, and
    exact for the conduction-only parabola.  Used by the test suite and
    the ``validate`` command to cross-check the closed form; the
    simulation pipeline never calls it.
    """
    if nodes < 3:
        raise ValueError("need at least 3 nodes")
    geo, mat, env = spec.geometry, spec.material, spec.environment
    w, h = geo.beam_width, geo.beam_thickness
    path = (geo.hot_arm_length + geo.gap) + geo.cold_arm_length
    j = current_density(spec)
    q = j * j * mat.resistivity
    k = mat.thermal_conductivity
    loss = 2.0 * (h + w) * env.convection_coefficient / (w * h)

    x = np.linspace(0.0, path, nodes)
    dx = path / (nodes - 1)
    n = nodes - 2  # interior unknowns, theta = T - ambient

    ab = np.zeros((3, n))
    ab[0, 1:] = k / dx ** 2          # super-diagonal
    ab[1, :] = -2.0 * k / dx ** 2 - loss
    ab[2, :-1] = k / dx ** 2         # sub-diagonal
    rhs = np.full(n, -q)
    theta = solve_banded((1, 1), ab, rhs)

    temps = np.empty(nodes)
    temps[0] = temps[-1] = env.ambient_temperature
    temps[1:-1] = env.ambient_temperature + theta
    return x, temps
