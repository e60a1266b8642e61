"""Command-line interface.

Subcommands: r0, equilibrium, simulate, stability, sweep. Exit codes:
0 on success, 1 on input or validation errors, 2 on numerical failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .equilibrium import EndemicEquilibrium, solve_endemic
from .errors import ModelInputError, NumericalError
from .dynamics import IntegratorConfig, simulate
from .io import (
    load_initial,
    load_model,
    sample_initial_states,
    write_sweep_csv,
    write_trajectory_csv,
)
from .spectral import reproduction_number
from .stability import endemic_certificate, jacobian_dfe, spectral_abscissa
from .stability import INCONCLUSIVE, STABLE, UNSTABLE
from .sweep import run_sweep


def _vec(v: np.ndarray) -> str:
    return "[" + ", ".join(format(float(x), ".12g") for x in v) + "]"


def cmd_r0(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    r0, spectral = reproduction_number(model, tol=args.tol)
    print(f"R0 = {r0:.6f}")
    print(f"iterations: {spectral.iterations}")
    print(f"residual: {spectral.residual:.3e}")
    print(f"v_right: {_vec(spectral.v_right)}")
    print(f"v_left: {_vec(spectral.v_left)}")
    return 0


def cmd_equilibrium(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    solved = solve_endemic(model, tol=args.tol)
    if isinstance(solved, EndemicEquilibrium):
        r0, _ = reproduction_number(model)
        print(f"R0 = {r0:.6f}")
        print(f"y_star: {_vec(solved.y_star)}")
        print(f"z_star: {_vec(solved.z_star)}")
        print(f"x_star: {_vec(solved.x_star)}")
        print(f"iterations: {solved.iterations}")
        print(f"residual: {solved.residual:.3e}")
        print(f"bracket_gap: {solved.bracket_gap:.3e}")
        report = {
            "r0": r0,
            "y_star": solved.y_star.tolist(),
            "z_star": solved.z_star.tolist(),
            "x_star": solved.x_star.tolist(),
            "iterations": solved.iterations,
            "residual": solved.residual,
            "bracket_gap": solved.bracket_gap,
        }
    else:
        tail = " [near threshold]" if solved.near_threshold else ""
        print(f"NoEndemic (R0 = {solved.r0:.6f}){tail}")
        report = {"r0": solved.r0, "no_endemic": True,
                  "near_threshold": solved.near_threshold}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
        print(f"wrote {args.out}")
    return 0


def _suffixed(path: str, index: int) -> str:
    base, ext = os.path.splitext(path)
    return f"{base}_{index:03d}{ext or '.csv'}"


def cmd_simulate(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    if (args.init is None) == (args.random == 0):
        raise ModelInputError("pass exactly one of --init PATH or --random K")
    if args.init is not None:
        starts = [load_initial(args.init)]
    else:
        rng = np.random.default_rng(args.seed)
        starts = sample_initial_states(model.n, args.random, rng)
    config = IntegratorConfig(dt=args.dt, t_end=args.t_end,
                              record_every=args.record_every,
                              lyapunov_trace=args.lyapunov)
    for index, (y0, z0) in enumerate(starts):
        trajectory = simulate(model, y0, z0, config)
        path = args.out if len(starts) == 1 else _suffixed(args.out, index)
        write_trajectory_csv(trajectory, path)
        print(f"wrote {path}")
    return 0


def cmd_stability(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    r0, spectral = reproduction_number(model)
    dfe_abscissa = spectral_abscissa(jacobian_dfe(model))
    if dfe_abscissa < 0.0:
        dfe_verdict = STABLE
    elif dfe_abscissa > 0.0:
        dfe_verdict = UNSTABLE
    else:
        dfe_verdict = INCONCLUSIVE
    report = {
        "r0": r0,
        "spectral": {"lambda": spectral.lam, "iterations": spectral.iterations,
                     "residual": spectral.residual},
        "dfe": {"abscissa": dfe_abscissa, "verdict": dfe_verdict},
        "endemic": None,
    }
    solved = solve_endemic(model, tol=args.tol, spectral=spectral)
    if isinstance(solved, EndemicEquilibrium):
        certificate = endemic_certificate(model, solved.y_star, solved.z_star,
                                          seed=args.seed, tol=args.tol)
        report["endemic"] = {
            "y_star": solved.y_star.tolist(),
            "z_star": solved.z_star.tolist(),
            "x_star": solved.x_star.tolist(),
            "eta": certificate.eta,
            "abscissa": certificate.spectral_abscissa,
            "gershgorin": [
                {"lambda": [s.lam.real, s.lam.imag],
                 "all_disks_left": s.all_disks_left,
                 "min_margin": s.min_margin}
                for s in certificate.gershgorin_samples
            ],
            "verdict": certificate.verdict,
        }
    text = json.dumps(report, indent=2)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    rows, failures = run_sweep(model, args.scale_min, args.scale_max,
                               args.steps, tol=args.tol)
    write_sweep_csv(rows, args.out)
    print(f"wrote {args.out} ({len(rows)} rows, {failures} warnings)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netsirs",
        description="Network SIRS epidemic model toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, tol: float = 1e-12) -> None:
        p.add_argument("--model", required=True, help="model JSON file")
        p.add_argument("--tol", type=float, default=tol, help="solver tolerance")

    p = sub.add_parser("r0", help="reproduction number and Perron eigenpair")
    common(p, tol=1e-10)
    p.set_defaults(func=cmd_r0)

    p = sub.add_parser("equilibrium", help="endemic equilibrium, if any")
    common(p)
    p.add_argument("--out", help="write a JSON report here")
    p.set_defaults(func=cmd_equilibrium)

    p = sub.add_parser("simulate", help="integrate trajectories to CSV")
    common(p)
    p.add_argument("--init", help="initial-condition JSON file")
    p.add_argument("--random", type=int, default=0, metavar="K",
                   help="draw K random initial conditions instead of --init")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--t-end", type=float, default=100.0)
    p.add_argument("--record-every", type=int, default=1)
    p.add_argument("--lyapunov", action="store_true",
                   help="append the Lyapunov value column V")
    p.add_argument("--out", required=True, help="output CSV path (indexed per start)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("stability", help="stability certificate as JSON")
    common(p)
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the random Gershgorin samples")
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("sweep", help="scale W over a grid and tabulate")
    common(p)
    p.add_argument("--scale-min", type=float, required=True)
    p.add_argument("--scale-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ModelInputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
