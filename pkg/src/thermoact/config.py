"""Plain-text configuration for actuators and studies.

Format: one ``section.key = value`` per line, ``#`` starts a comment,
blank lines ignored.  Sections are material, environment, geometry,
drive and study.  Geometry lengths are written in micrometres, drive in
volts, material and environment in SI; micrometre-to-metre conversion
happens here and nowhere else.  Any key may be omitted, in which case
the reference actuator's value applies, so an empty document is a valid
description of the default device.

Example::

    geometry.hot_arm_length = 750     # um
    geometry.cold_arm_length = 345    # um
    drive.voltage = 8
    study.parameter = ratio
    study.optimize_grid = 71
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .model import (ActuatorSpec, Drive, Environment, Geometry,
                    InvalidSpecError, Material)
from .study import PARAMETERS

_MICRO = 1.0e-6

_SECTION_TYPES = {
    "material": Material,
    "environment": Environment,
    "geometry": Geometry,
    "drive": Drive,
}

_STUDY_KEYS = {
    "parameter": str,
    "start": float,
    "stop": float,
    "steps": int,
    "optimize_grid": int,
}

# Display units for swept values (config file and CLI flags).
_DISPLAY_SCALE = {
    "voltage": 1.0,
    "ratio": 1.0,
    "gap": _MICRO,
    "hot_arm_length": _MICRO,
}

_DEFAULT_GRIDS = {
    "ratio": tuple(float(v) for v in np.linspace(0.1, 0.8, 71)),
    "gap": (5.0, 6.0, 7.0, 8.0, 9.0, 10.0),
    "voltage": tuple(float(v) for v in np.linspace(0.0, 8.0, 17)),
    "hot_arm_length": (500.0, 600.0, 750.0),
}


class ConfigError(ValueError):
    """Unparseable or invalid configuration; lists every diagnostic."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(self.diagnostics))


@dataclass(frozen=True)
class StudySettings:
    """Study controls from the config file, in display units.

    start/stop/steps override the built-in grid for the chosen
    parameter when all three are present.
    """

    parameter: str = "ratio"
    start: float | None = None
    stop: float | None = None
    steps: int | None = None
    optimize_grid: int = 71


def _known_keys():
    keys = {}
    for section, cls in _SECTION_TYPES.items():
        for f in fields(cls):
            keys[f"{section}.{f.name}"] = float
    for name, kind in _STUDY_KEYS.items():
        keys[f"study.{name}"] = kind
    return keys


_SCHEMA = _known_keys()


def parse_config(text: str):
    """Parse a config document into (ActuatorSpec, StudySettings).

    Raises ConfigError carrying one line-numbered diagnostic per
    problem; nothing is constructed until the whole document is clean.
    """
    values: dict[str, object] = {}
    problems: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append(f"line {lineno}: expected 'section.key = value'")
            continue
        key, _, literal = line.partition("=")
        key = key.strip()
        literal = literal.strip()
        if key not in _SCHEMA:
            problems.append(f"line {lineno}: unknown key {key!r}")
            continue
        if key in values:
            problems.append(f"line {lineno}: duplicate key {key!r}")
            continue
        kind = _SCHEMA[key]
        if kind is str:
            values[key] = literal
            continue
        try:
            values[key] = kind(literal)
        except ValueError:
            expected = "an integer" if kind is int else "a number"
            problems.append(
                f"line {lineno}: {key} expects {expected}, got {literal!r}")
    if problems:
        raise ConfigError(problems)

    def section_kwargs(section):
        out = {}
        for f in fields(_SECTION_TYPES[section]):
            key = f"{section}.{f.name}"
            if key in values:
                v = values[key]
                out[f.name] = v * _MICRO if section == "geometry" else v
        return out

    try:
        spec = ActuatorSpec(
            material=Material(**section_kwargs("material")),
            environment=Environment(**section_kwargs("environment")),
            geometry=Geometry(**section_kwargs("geometry")),
            drive=Drive(**section_kwargs("drive")),
        )
    except InvalidSpecError as exc:
        raise ConfigError(exc.diagnostics) from exc

    study_kwargs = {name: values[f"study.{name}"]
                    for name in _STUDY_KEYS if f"study.{name}" in values}
    settings = StudySettings(**study_kwargs)
    study_problems = []
    if settings.parameter not in PARAMETERS:
        study_problems.append(
            f"study.parameter must be one of {', '.join(PARAMETERS)}")
    if settings.steps is not None and settings.steps < 2:
        study_problems.append("study.steps must be at least 2")
    if settings.optimize_grid < 3:
        study_problems.append("study.optimize_grid must be at least 3")
    if (settings.start is None) != (settings.stop is None):
        study_problems.append("study.start and study.stop must appear together")
    if settings.start is not None and settings.stop is not None \
            and not settings.start < settings.stop:
        study_problems.append("study.start must be below study.stop")
    if study_problems:
        raise ConfigError(study_problems)
    return spec, settings


def _micrometres(metres: float) -> float:
    """Display value whose parse (x 1e-6) reproduces ``metres`` exactly.

    Division then multiplication by 1e-6 can land one unit in the last
    place off, so nudge until the round trip closes (metres values that
    originated as micrometre inputs always close within a few steps).
    """
    display = metres / _MICRO
    for _ in range(4):
        back = display * _MICRO
        if back == metres:
            return display
        display = math.nextafter(display,
                                 math.inf if back < metres else -math.inf)
    return metres / _MICRO


def serialize_config(spec: ActuatorSpec, settings: StudySettings | None = None) -> str:
    """Render a spec (and optional study settings) as a config document.

    Emits every key in schema order so the output is also a readable
    record of the full operating point.
    """
    lines = [
        "# thermoact configuration",
        "# geometry in micrometres, drive in volts, the rest in SI",
    ]
    for section in ("material", "environment", "geometry", "drive"):
        component = getattr(spec, section)
        lines.append("")
        for f in fields(_SECTION_TYPES[section]):
            value = getattr(component, f.name)
            if section == "geometry":
                value = _micrometres(value)
            lines.append(f"{section}.{f.name} = {value!r}")
    if settings is not None:
        lines.append("")
        lines.append(f"study.parameter = {settings.parameter}")
        if settings.start is not None:
            lines.append(f"study.start = {settings.start!r}")
        if settings.stop is not None:
            lines.append(f"study.stop = {settings.stop!r}")
        if settings.steps is not None:
            lines.append(f"study.steps = {settings.steps}")
        lines.append(f"study.optimize_grid = {settings.optimize_grid}")
    return "\n".join(lines) + "\n"


def display_scale(parameter: str) -> float:
    """Factor taking display units of a swept parameter to SI."""
    return _DISPLAY_SCALE[parameter]


def resolve_sweep(settings: StudySettings, parameter: str | None = None,
                  start: float | None = None, stop: float | None = None,
                  steps: int | None = None):
    """Merge CLI overrides with config settings into (parameter, values).

    Values come out in SI, strictly increasing.  When no range is given
    anywhere, the parameter's built-in study grid applies (71 ratios in
    [0.1, 0.8], gaps 5..10 um, 17 voltages in [0, 8], hot-arm lengths
    {500, 600, 750} um).
    """
    param = parameter if parameter is not None else settings.parameter
    if param not in PARAMETERS:
        raise ConfigError([f"unknown sweep parameter {param!r}"])
    lo = start if start is not None else settings.start
    hi = stop if stop is not None else settings.stop
    n = steps if steps is not None else settings.steps
    given = [v is not None for v in (lo, hi, n)]
    if not any(given):
        display = _DEFAULT_GRIDS[param]
    elif all(given):
        if not lo < hi:
            raise ConfigError(["sweep start must be below stop"])
        if n < 2:
            raise ConfigError(["sweep needs at least 2 steps"])
        display = tuple(float(v) for v in np.linspace(lo, hi, n))
    else:
        missing = [name for name, ok in
                   zip(("start", "stop", "steps"), given) if not ok]
        raise ConfigError(
            [f"incomplete sweep range: missing {', '.join(missing)}"])
    scale = _DISPLAY_SCALE[param]
    return param, tuple(v * scale for v in display)
