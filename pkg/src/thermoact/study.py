"""Parameter studies over the actuator: sweeps, ratio optimisation and
arm-length sensitivity.

Studies vary one scalar at a time around a base spec.  The swept
parameters and their meanings:

  voltage         drive voltage, V
  ratio           cold-arm length as a fraction of the hot arm
  gap             air gap between the arms, m
  hot_arm_length  hot-arm length, m; the cold arm follows so that the
                  base length ratio is preserved

Each study draws every number from ``thermomech.simulate``; no
approximation or surrogate is introduced at this level, so study output
inherits the pipeline's validation status unchanged.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .model import ActuatorSpec, Drive, InvalidSpecError
from .thermomech import FrameSolution, simulate

PARAMETERS = ("voltage", "ratio", "gap", "hot_arm_length")

_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - np.sqrt(5.0)) / 2.0


def apply_parameter(base: ActuatorSpec, parameter: str, value: float) -> ActuatorSpec:
    """Return a copy of ``base`` with one study parameter set to ``value``.

    Raises InvalidSpecError when the induced spec violates a bound and
    ValueError for an unknown parameter name.
    """
    if parameter == "voltage":
        return dataclasses.replace(base, drive=Drive(voltage=value))
    if parameter == "ratio":
        geometry = dataclasses.replace(
            base.geometry, cold_arm_length=value * base.geometry.hot_arm_length)
        return dataclasses.replace(base, geometry=geometry)
    if parameter == "gap":
        geometry = dataclasses.replace(base.geometry, gap=value)
        return dataclasses.replace(base, geometry=geometry)
    if parameter == "hot_arm_length":
        keep_ratio = base.geometry.cold_arm_length / base.geometry.hot_arm_length
        geometry = dataclasses.replace(
            base.geometry, hot_arm_length=value,
            cold_arm_length=keep_ratio * value)
        return dataclasses.replace(base, geometry=geometry)
    raise ValueError(f"unknown study parameter {parameter!r}")


@dataclass(frozen=True)
class SweepPlan:
    """A validated list of operating points for one swept parameter.

    Construction eagerly builds every induced spec, so an invalid point
    aborts before any simulation runs, naming the offending value.
    """

    base: ActuatorSpec
    parameter: str
    values: tuple[float, ...]

    def __post_init__(self):
        if self.parameter not in PARAMETERS:
            raise ValueError(f"unknown study parameter {self.parameter!r}")
        if len(self.values) == 0:
            raise ValueError("sweep needs at least one value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        for value in self.values:
            try:
                apply_parameter(self.base, self.parameter, value)
            except InvalidSpecError as exc:
                raise InvalidSpecError(
                    [f"{self.parameter} = {value!r}: {d}" for d in exc.diagnostics]
                ) from exc


@dataclass(frozen=True)
class SweepRecord:
    """One row of sweep output (SI units; temperatures in C)."""

    value: float
    tip_deflection: float
    junction_deflection: float
    junction_rotation: float
    hot_elongation: float
    cold_elongation: float
    peak_temperature: float


@dataclass(frozen=True)
class SweepTable:
    plan: SweepPlan
    records: tuple[SweepRecord, ...]


def _record(value: float, solution: FrameSolution) -> SweepRecord:
    return SweepRecord(
        value=value,
        tip_deflection=solution.tip_deflection,
        junction_deflection=solution.junction_deflection,
        junction_rotation=solution.junction_rotation,
        hot_elongation=solution.thermal_load.hot_elongation,
        cold_elongation=solution.thermal_load.cold_elongation,
        peak_temperature=solution.peak_temperature,
    )


def run_sweep(plan: SweepPlan) -> SweepTable:
    """Simulate every point of the plan, in order."""
    records = tuple(
        _record(value, simulate(apply_parameter(plan.base, plan.parameter, value)))
        for value in plan.values)
    return SweepTable(plan=plan, records=records)


@dataclass(frozen=True)
class OptimumReport:
    """Outcome of a ratio optimisation.

    flag is None for a clean unimodal refinement, "flat" when the
    objective does not vary over the grid, "non_unimodal" when the grid
    shows multiple rises and falls; in both flagged cases the best grid
    point is reported unrefined.  gain_over_range is the max/min tip
    deflection across the grid (nan when the minimum is not positive).
    """

    hot_arm_length: float
    optimal_ratio: float
    optimal_tip_deflection: float
    grid_resolution: int
    gain_over_range: float
    flag: str | None


def golden_section_max(func, lo: float, hi: float, tol: float = 1.0e-4):
    """Maximise a unimodal scalar function on [lo, hi].

    Returns (argmax, max) of the best point actually evaluated, which
    can only improve on the best bracketing endpoint.  Deterministic:
    no randomness, fixed evaluation order.
    """
    a, b = float(lo), float(hi)
    best_x, best_f = a, func(a)
    fb_end = func(b)
    if fb_end > best_f:
        best_x, best_f = b, fb_end
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = func(c), func(d)
    for x, f in ((c, fc), (d, fd)):
        if f > best_f:
            best_x, best_f = x, f
    while (b - a) > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = func(c)
            if fc > best_f:
                best_x, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = func(d)
            if fd > best_f:
                best_x, best_f = d, fd
    return best_x, best_f


def find_optimal_ratio(base: ActuatorSpec, lo: float = 0.1, hi: float = 0.8,
                       grid: int = 71) -> OptimumReport:
    """Locate the cold/hot length ratio maximising tip deflection.

    Scans ``grid`` evenly spaced ratios in [lo, hi], checks the sampled
    objective is unimodal, then refines around the best grid point by
    golden-section search to 1e-4 in ratio.  A flat or non-unimodal
    scan is reported with the corresponding flag instead of refined
    blindly.
    """
    if not 0.0 < lo < hi:
        raise ValueError("need 0 < lo < hi")
    if grid < 3:
        raise ValueError("grid must have at least 3 points")
    ratios = np.linspace(lo, hi, grid)

    def objective(ratio: float) -> float:
        return simulate(apply_parameter(base, "ratio", ratio)).tip_deflection

    deflections = np.array([objective(r) for r in ratios])
    low = float(deflections.min())
    high = float(deflections.max())
    gain = high / low if low > 0.0 else float("nan")
    peak = int(np.argmax(deflections))

    if high == low:
        return OptimumReport(base.geometry.hot_arm_length, float(ratios[peak]),
                             high, grid, gain, "flat")
    rising = deflections[1:] > deflections[:-1]
    unimodal = np.all(rising[:peak]) and not np.any(rising[peak:])
    if not unimodal:
        return OptimumReport(base.geometry.hot_arm_length, float(ratios[peak]),
                             float(deflections[peak]), grid, gain, "non_unimodal")

    bracket_lo = float(ratios[max(peak - 1, 0)])
    bracket_hi = float(ratios[min(peak + 1, grid - 1)])
    best_ratio, best_deflection = golden_section_max(objective, bracket_lo, bracket_hi)
    if deflections[peak] > best_deflection:
        best_ratio, best_deflection = float(ratios[peak]), float(deflections[peak])
    return OptimumReport(base.geometry.hot_arm_length, best_ratio,
                         best_deflection, grid, gain, None)


def sensitivity_summary(tables) -> list[tuple[float, float]]:
    """Spread of tip deflection per sweep, ordered by hot-arm length.

    All tables must sweep the same parameter over identical values;
    each contributes (hot_arm_length, max - min of tip deflection).
    A longer hot arm showing a larger spread marks the design as more
    responsive to that parameter.
    """
    tables = list(tables)
    if not tables:
        raise ValueError("no sweep tables given")
    parameter = tables[0].plan.parameter
    values = tables[0].plan.values
    for table in tables[1:]:
        if table.plan.parameter != parameter or table.plan.values != values:
            raise ValueError("sweeps are not over a common parameter grid")
    out = []
    for table in tables:
        tips = [record.tip_deflection for record in table.records]
        out.append((table.plan.base.geometry.hot_arm_length,
                    max(tips) - min(tips)))
    out.sort(key=lambda pair: pair[0])
    return out
