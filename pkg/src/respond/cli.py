"""Command-line interface: linear/third-order scans, oracle checks, figure presets.

Exit codes: 0 success, 2 model-file schema error, 3 numerical failure,
4 unsupported side pattern, 5 oracle tolerance breach.  Diagnostics go to
standard error; ``oracle-check`` writes its JSON report to standard output.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__
from .errors import NoConvergence, RespondError, SchemaError, UnsupportedSides
from .fock import FockConfig, PathwayOracle
from .model import load_model
from .presets import PRESETS, run_linear, run_preset, run_third
from .response import PathwaySpec, vibrational_response

EXIT_SCHEMA = 2
EXIT_NUMERICAL = 3
EXIT_SIDES = 4
EXIT_TOLERANCE = 5


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="respond",
        description="Vibronic response functions via squeezed coherent states.",
    )
    parser.add_argument("--version", action="version", version=f"respond {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("linear", help="scan the linear response over one delay")
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--tmax", type=float, required=True, help="last delay (1/omega_ref)")
    p.add_argument("--steps", type=int, required=True, help="number of samples")
    p.add_argument("--pathway", type=int, default=1, help="excited state index (default 1)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("third", help="scan a third-order response over (t1, t3)")
    p.add_argument("--model", required=True)
    p.add_argument("--t2", type=float, required=True, help="fixed second delay")
    p.add_argument("--lambdas", default="1,0,1", help="comma list, e.g. 1,0,1")
    p.add_argument("--sides", default="LLL", help="LLL or LRL")
    p.add_argument("--raw-times", action="store_true",
                   help="treat delays as signed interval durations (no remapping)")
    p.add_argument("--grid", default="200x200", help="t1 x t3 sample counts")
    p.add_argument("--t1-max", type=float, default=2.0 * np.pi)
    p.add_argument("--t3-max", type=float, default=2.0 * np.pi)
    p.add_argument("--t1-min", type=float, default=0.0)
    p.add_argument("--t3-min", type=float, default=0.0)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("oracle-check", help="randomized method-vs-oracle comparison")
    p.add_argument("--model", required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--n-max", type=int, default=16, help="starting per-mode cutoff")
    p.add_argument("--max-n-max", type=int, default=120, help="doubling cap")

    p = sub.add_parser("figure", help="emit a named figure preset dataset")
    p.add_argument("name", choices=sorted(PRESETS))
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--grid", default=None, help="override t1 x t3 sample counts")
    p.add_argument("--steps", type=int, default=None, help="override linear samples")
    p.add_argument("--workers", type=int, default=None)
    return parser


def _parse_grid(text: str):
    try:
        g1, g3 = (int(part) for part in text.lower().split("x"))
        if g1 < 1 or g3 < 1:
            raise ValueError
        return g1, g3
    except ValueError:
        raise SchemaError(f"--grid expects like 200x200, got {text!r}") from None


def _parse_lambdas(text: str):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise SchemaError(f"--lambdas expects a comma list of ints, got {text!r}") from None


def cmd_linear(args) -> int:
    model = load_model(args.model)
    pathway = PathwaySpec((args.pathway,))
    run_linear(model, pathway, args.tmax, args.steps, args.out, workers=args.workers)
    return 0


def cmd_third(args) -> int:
    model = load_model(args.model)
    lambdas = _parse_lambdas(args.lambdas)
    sides = tuple(args.sides.upper())
    if len(sides) != len(lambdas):
        raise UnsupportedSides(
            f"sides {args.sides!r} does not match {len(lambdas)} interactions"
        )
    if args.raw_times:
        pathway = PathwaySpec(lambdas)
    else:
        pathway = PathwaySpec(lambdas, sides=sides)
        if not all(s == "L" for s in sides):
            # probe the remapping now so unsupported patterns fail fast
            from .response import remap_times

            remap_times(sides, (0.0,) * len(sides))
    g1, g3 = _parse_grid(args.grid)
    t1 = np.linspace(args.t1_min, args.t1_max, g1)
    t3 = np.linspace(args.t3_min, args.t3_max, g3)
    run_third(model, pathway, args.t2, t1, t3, args.out,
              raw_times=args.raw_times, workers=args.workers)
    return 0


def cmd_oracle_check(args) -> int:
    """Seeded random method-vs-oracle comparisons on one model.

    Draws whose brute-force reference cannot converge within the truncation
    cap are skipped (listed in the report) and redrawn, up to ten times the
    requested trial count: deep squeezing makes the number-basis tails of the
    reference arbitrarily slow, which says nothing about the method.
    """
    model = load_model(args.model)
    if model.n_modes > 2:
        raise SchemaError("oracle-check supports at most 2 modes")
    rng = np.random.default_rng(args.seed)
    # the oracle's own convergence gate never needs to be tighter than ~1e-9
    fock = FockConfig(
        n_max=args.n_max,
        tol=max(args.tol / 4.0, 1e-9),
        max_n_max=args.max_n_max,
    )
    oracle = PathwayOracle(model, fock)
    results, skipped = [], []
    worst = None
    excited = list(range(1, model.n_states)) or [0]
    attempts = 0
    while len(results) < args.trials and attempts < 10 * max(1, args.trials):
        attempts += 1
        order = int(rng.choice([1, 3]))
        lam = int(rng.choice(excited))
        lambdas = (lam,) if order == 1 else (lam, 0, lam)
        horizon = 4.0 * np.pi / float(model.omega[lam].mean())
        times = tuple(float(t) for t in rng.uniform(0.0, horizon, order))
        try:
            r_oracle = oracle.response(lambdas, times)
        except NoConvergence:
            skipped.append({"lambdas": list(lambdas), "times": list(times),
                            "reason": "reference not converged at the cap"})
            continue
        r_method = vibrational_response(model, PathwaySpec(lambdas), times)
        delta = abs(r_method - r_oracle)
        entry = {
            "trial": len(results),
            "lambdas": list(lambdas),
            "times": list(times),
            "r_method": [r_method.real, r_method.imag],
            "r_oracle": [r_oracle.real, r_oracle.imag],
            "abs_delta": delta,
        }
        results.append(entry)
        if worst is None or delta > worst["abs_delta"]:
            worst = entry
    if len(results) < args.trials:
        raise NoConvergence(
            f"only {len(results)} of {args.trials} trials found a convergent "
            f"reference within {attempts} draws at n_max <= {args.max_n_max}"
        )
    max_delta = max((r["abs_delta"] for r in results), default=0.0)
    report = {
        "model": args.model,
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
        "n_max": args.n_max,
        "max_n_max": args.max_n_max,
        "max_abs_delta": max_delta,
        "worst": worst,
        "skipped": skipped,
        "results": results,
        "pass": bool(max_delta <= args.tol),
    }
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    if max_delta > args.tol:
        print(f"oracle-check FAILED: max |dR| = {max_delta:.3e} > {args.tol:g}; "
              f"worst trial {worst['trial']}", file=sys.stderr)
        return EXIT_TOLERANCE
    return 0


def cmd_figure(args) -> int:
    grid = _parse_grid(args.grid) if args.grid else None
    run_preset(args.name, args.out, grid=grid, steps=args.steps, workers=args.workers)
    return 0


_COMMANDS = {
    "linear": cmd_linear,
    "third": cmd_third,
    "oracle-check": cmd_oracle_check,
    "figure": cmd_figure,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except UnsupportedSides as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIDES
    except (RespondError, np.linalg.LinAlgError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
