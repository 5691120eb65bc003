"""Command-line front end.

    thermoact simulate       one operating point, report to stdout
    thermoact sweep          parameter sweep to CSV (and optional SVG)
    thermoact optimize-ratio best cold/hot length ratio for the config
    thermoact validate       cross-check closed forms against oracles

Exit codes: 0 success, 1 configuration problems, 2 solver guard
tripped (rotation outside the small-angle regime, singular system),
3 validation breach from the ``validate`` subcommand.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from .config import (ConfigError, StudySettings, parse_config, resolve_sweep)
from .electrothermal import fd_temperature_oracle, solve_temperature_profile, temperature_at
from .model import ActuatorSpec, Drive, InvalidSpecError
from .output import sweep_chart_svg, sweep_csv
from .study import PARAMETERS, SweepPlan, find_optimal_ratio, run_sweep
from .thermomech import (FrameSingularError, SmallAngleError, simulate,
                         stiffness_oracle)

_MICRO = 1.0e-6

THERMAL_TOLERANCE = 1.0e-3
MECHANICAL_TOLERANCE = 2.0e-2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermoact",
        description="Lateral electrothermal microactuator simulator")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH",
                        help="configuration file (defaults apply if omitted)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common],
                       help="simulate one operating point")
    p.add_argument("--voltage", type=float, help="override drive voltage [V]")
    p.add_argument("--out", metavar="CSV", help="also write a one-row CSV")

    p = sub.add_parser("sweep", parents=[common], help="run a parameter sweep")
    p.add_argument("--param", choices=PARAMETERS,
                   help="swept parameter (default from config)")
    p.add_argument("--from", dest="start", type=float, metavar="X",
                   help="sweep start, display units")
    p.add_argument("--to", dest="stop", type=float, metavar="Y",
                   help="sweep end, display units")
    p.add_argument("--steps", type=int, help="number of sweep points")
    p.add_argument("--out", metavar="CSV", help="CSV path (default stdout)")
    p.add_argument("--svg", metavar="SVG", help="also write a line chart")

    p = sub.add_parser("optimize-ratio", parents=[common],
                       help="find the tip-maximising length ratio")
    p.add_argument("--grid", type=int, help="scan resolution (default 71)")

    sub.add_parser("validate", parents=[common],
                   help="compare closed forms against numerical oracles")
    return parser


def _load(config_path):
    if config_path is None:
        return parse_config("")
    with open(config_path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def _cmd_simulate(spec: ActuatorSpec, args) -> int:
    if args.voltage is not None:
        spec = dataclasses.replace(spec, drive=Drive(voltage=args.voltage))
    solution = simulate(spec)
    rows = (
        ("tip_deflection", solution.tip_deflection / _MICRO, "um"),
        ("junction_deflection", solution.junction_deflection / _MICRO, "um"),
        ("junction_rotation", solution.junction_rotation * 1.0e3, "mrad"),
        ("hot_elongation", solution.thermal_load.hot_elongation / _MICRO, "um"),
        ("cold_elongation", solution.thermal_load.cold_elongation / _MICRO, "um"),
        ("peak_temperature", solution.peak_temperature, "C"),
    )
    for name, value, unit in rows:
        print(f"{name} = {value:.9g} {unit}")
    if args.out:
        plan = SweepPlan(base=spec, parameter="voltage",
                         values=(spec.drive.voltage,))
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(sweep_csv(run_sweep(plan)))
    return 0


def _cmd_sweep(spec: ActuatorSpec, settings: StudySettings, args) -> int:
    param, values = resolve_sweep(settings, parameter=args.param,
                                  start=args.start, stop=args.stop,
                                  steps=args.steps)
    table = run_sweep(SweepPlan(base=spec, parameter=param, values=values))
    text = sweep_csv(table)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8", newline="") as fh:
            fh.write(sweep_chart_svg(table))
    return 0


def _cmd_optimize(spec: ActuatorSpec, settings: StudySettings, args) -> int:
    grid = args.grid if args.grid is not None else settings.optimize_grid
    report = find_optimal_ratio(spec, grid=grid)
    print(f"hot_arm_length = {report.hot_arm_length / _MICRO:.9g} um")
    print(f"optimal_ratio={report.optimal_ratio:.9g}")
    print(f"optimal_tip_deflection = "
          f"{report.optimal_tip_deflection / _MICRO:.9g} um")
    print(f"grid_resolution = {report.grid_resolution}")
    print(f"gain_over_range = {report.gain_over_range:.9g}")
    if report.flag is not None:
        print(f"warning: objective is {report.flag}; reporting the best "
              "grid point without refinement", file=sys.stderr)
    return 0


def _cmd_validate(spec: ActuatorSpec) -> int:
    profile = solve_temperature_profile(spec)
    xs, fd_temps = fd_temperature_oracle(spec, nodes=4097)
    closed = temperature_at(profile, xs)
    scale = np.max(np.abs(fd_temps - profile.ambient))
    thermal_err = float(np.max(np.abs(closed - fd_temps)) / scale) \
        if scale > 0.0 else 0.0

    solution = simulate(spec)
    oracle = stiffness_oracle(spec, elements_per_member=64)
    pairs = (
        (solution.tip_deflection, oracle.tip_deflection),
        (solution.junction_deflection, oracle.junction_deflection),
        (solution.junction_rotation, oracle.junction_rotation),
    )
    mech_err = 0.0
    for ours, theirs in pairs:
        if theirs != 0.0:
            mech_err = max(mech_err, abs(ours - theirs) / abs(theirs))
        elif ours != 0.0:
            mech_err = max(mech_err, float("inf"))
    print(f"thermal_max_rel_error = {thermal_err:.3e} (limit {THERMAL_TOLERANCE:.0e})")
    print(f"mechanical_max_rel_error = {mech_err:.3e} (limit {MECHANICAL_TOLERANCE:.0e})")
    breaches = []
    if not thermal_err <= THERMAL_TOLERANCE:
        breaches.append(f"thermal error {thermal_err:.3e} exceeds {THERMAL_TOLERANCE:.0e}")
    if not mech_err <= MECHANICAL_TOLERANCE:
        breaches.append(f"mechanical error {mech_err:.3e} exceeds {MECHANICAL_TOLERANCE:.0e}")
    if breaches:
        for line in breaches:
            print(f"validation breach: {line}", file=sys.stderr)
        return 3
    print("validation ok")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        spec, settings = _load(args.config)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        for line in exc.diagnostics:
            print(f"error: {line}", file=sys.stderr)
        return 1
    try:
        if args.command == "simulate":
            return _cmd_simulate(spec, args)
        if args.command == "sweep":
            return _cmd_sweep(spec, settings, args)
        if args.command == "optimize-ratio":
            return _cmd_optimize(spec, settings, args)
        return _cmd_validate(spec)
    except (ConfigError, InvalidSpecError) as exc:
        for line in exc.diagnostics:
            print(f"error: {line}", file=sys.stderr)
        return 1
    except (SmallAngleError, FrameSingularError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
