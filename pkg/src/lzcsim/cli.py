"""Command line interface.

Exit codes: 0 success / tolerance pass, 1 tolerance failure,
2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from .errors import LzcError
from .models import LzcModel, load_model, lzc_model_to_dict
from .output import emit
from .scenarios import (REGISTRY, analytic_sweep, compare, get_scenario,
                        run_scenario, spectrum_rows)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lzc",
        description="Multichannel Landau-Zener-Coulomb model: closed-form "
                    "transition probabilities vs unitary numerical "
                    "propagation.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a registered scenario sweep")
    run.add_argument("--scenario", required=True, choices=sorted(REGISTRY))
    run.add_argument("--g-min", type=float)
    run.add_argument("--g-max", type=float)
    run.add_argument("--g-steps", type=int)
    run.add_argument("--dt", type=float)
    run.add_argument("--t-end", type=float)
    run.add_argument("--jobs", type=int, default=1)
    run.add_argument("--out", required=True)
    run.add_argument("--format", choices=("csv", "json"), default="csv")

    ana = sub.add_parser("analytic",
                         help="closed forms only, no propagation")
    ana.add_argument("--model", required=True)
    ana.add_argument("--sweep", metavar="PATH:MIN:MAX:STEPS")
    ana.add_argument("--out", required=True)
    ana.add_argument("--format", choices=("csv", "json"), default="csv")

    ver = sub.add_parser("verify",
                         help="analytic-vs-numeric check with exit code")
    ver.add_argument("--scenario", required=True, choices=sorted(REGISTRY))
    ver.add_argument("--tol", type=float, required=True)
    ver.add_argument("--g-min", type=float)
    ver.add_argument("--g-max", type=float)
    ver.add_argument("--g-steps", type=int)
    ver.add_argument("--dt", type=float)
    ver.add_argument("--t-end", type=float)
    ver.add_argument("--jobs", type=int, default=1)

    spec = sub.add_parser("spectrum", help="adiabatic energies over time")
    spec.add_argument("--model", required=True)
    spec.add_argument("--t-min", type=float, required=True)
    spec.add_argument("--t-max", type=float, required=True)
    spec.add_argument("--points", type=int, required=True)
    spec.add_argument("--out", required=True)
    spec.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _overrides(args) -> dict:
    return {"dt": getattr(args, "dt", None),
            "t_end": getattr(args, "t_end", None),
            "g_min": getattr(args, "g_min", None),
            "g_max": getattr(args, "g_max", None),
            "g_steps": getattr(args, "g_steps", None)}


def _cmd_run(args) -> int:
    scenario = get_scenario(args.scenario)
    rows = run_scenario(args.scenario, _overrides(args), jobs=args.jobs)
    emit(rows, args.format, args.out, scenario=args.scenario,
         config=dataclasses.asdict(scenario.config))
    print(f"{args.scenario}: wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_analytic(args) -> int:
    model = load_model(args.model)
    if not isinstance(model, LzcModel):
        print("analytic closed forms need an LzcModel file", file=sys.stderr)
        return 2
    if args.sweep:
        try:
            path, lo, hi, steps = args.sweep.rsplit(":", 3)
            grid = np.linspace(float(lo), float(hi), int(steps))
        except ValueError:
            print(f"bad --sweep spec {args.sweep!r}, expected "
                  "PATH:MIN:MAX:STEPS", file=sys.stderr)
            return 2
        rows = analytic_sweep(model, path, grid)
    else:
        rows = analytic_sweep(model, None)
    emit(rows, args.format, args.out, model=lzc_model_to_dict(model))
    print(f"wrote {len(rows)} analytic rows to {args.out}")
    return 0


def _cmd_verify(args) -> int:
    rows = run_scenario(args.scenario, _overrides(args), jobs=args.jobs)
    report = compare(rows, args.tol)
    print(f"{args.scenario}: {report}")
    return 0 if report.passed else 1


def _cmd_spectrum(args) -> int:
    model = load_model(args.model)
    if not isinstance(model, LzcModel):
        print("spectrum needs an LzcModel file", file=sys.stderr)
        return 2
    grid = np.linspace(args.t_min, args.t_max, args.points)
    rows = spectrum_rows(model, grid)
    emit(rows, args.format, args.out, model=lzc_model_to_dict(model))
    print(f"wrote {len(rows)} spectrum rows to {args.out}")
    return 0


_COMMANDS = {"run": _cmd_run, "analytic": _cmd_analytic,
             "verify": _cmd_verify, "spectrum": _cmd_spectrum}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (LzcError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
