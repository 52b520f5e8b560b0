"""Command line interface.

Every experiment subcommand takes --seed, --threads, --out-dir and writes
runs.csv / aggregate.csv / meta.csv (schemas in the README) into the output
directory.  Environments are named f, g, garland, or peak:L,alpha,xstar,M.
"""

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .envs import HolderParams
from .harness import (
    APPENDIX_E_ALPHAS,
    ExperimentConfig,
    appendix_e_suite,
    rate_curve_rows,
    run_experiment,
    run_gpo_experiment,
    write_experiment,
    write_family_csv,
    write_gpo_experiment,
    write_meta_csv,
    write_rates_csv,
    fmt9,
)
from .rates import adaptive_lower_bound, globreg_check, lowerbound_family, proof_preset


def _parse_threads(s):
    if s == "auto":
        return os.cpu_count() or 1
    n = int(s)
    if n < 1:
        raise argparse.ArgumentTypeError("threads must be >= 1 or 'auto'")
    return n


def _parse_grid(spec):
    """Grid specs: 'log:lo:hi:n', 'lin:lo:hi:n', or comma-separated values."""
    if spec.startswith("log:") or spec.startswith("lin:"):
        kind, lo, hi, n = spec.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
        if kind == "log":
            return np.geomspace(lo, hi, n)
        return np.linspace(lo, hi, n)
    return np.array([float(s) for s in spec.split(",")])


def _common(parser, runs_default=20):
    parser.add_argument("--seed", type=int, default=0, help="base seed (u64)")
    parser.add_argument(
        "--threads", type=_parse_threads, default=1, help="worker threads or 'auto'"
    )
    parser.add_argument("--out-dir", default="results", help="output directory")
    return parser


def _experiment_args(parser, runs_default=20):
    parser.add_argument("--env", default="f", help="f | g | garland | peak:L,alpha,xstar,M")
    parser.add_argument("--T", type=int, required=True, help="horizon")
    parser.add_argument("--runs", type=int, default=runs_default)
    parser.add_argument("--noise", choices=["gaussian", "none"], default="gaussian")
    parser.add_argument("--stride", type=int, default=None, help="checkpoint stride")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="cabandits",
        description="Adaptive continuum-armed bandit experiments",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = _common(sub.add_parser("run", help="generic experiment runner"))
    p.add_argument("--algo", required=True, choices=["cab1", "medzo", "medzo-anytime", "gpo"])
    _experiment_args(p)
    p.add_argument("--L", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--B", type=float, default=None)
    p.add_argument("--m", type=float, default=0.5)
    p.add_argument("--force", action="store_true")

    p = _common(sub.add_parser("cab1", help="CAB1.1 tuned to an assumed (L, alpha)"))
    _experiment_args(p)
    p.add_argument("--L", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)

    p = _common(sub.add_parser("medzo", help="MeDZO with budget B (default sqrt(T))"))
    _experiment_args(p)
    p.add_argument("--B", type=float, default=None)
    p.add_argument("--force", action="store_true", help="allow B below sqrt(T)")
    p.add_argument(
        "--dump-regimes", action="store_true", help="also write regimes.csv"
    )

    p = _common(sub.add_parser("medzo-anytime", help="doubling-trick MeDZO"))
    _experiment_args(p)
    p.add_argument("--m", type=float, default=0.5, help="budget exponent in [1/2, 1]")

    p = _common(sub.add_parser("gpo", help="GPO simple-regret runs"))
    _experiment_args(p)

    p = _common(sub.add_parser("moss-bench", help="finite-armed MOSS benchmark"))
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--runs", type=int, default=200)
    p.add_argument("--n-arms", type=int, default=10)
    p.add_argument("--gap", type=float, default=0.05, help="means are 0.5 - gap*i")
    p.add_argument("--noise", choices=["gaussian", "none"], default="gaussian")

    p = _common(sub.add_parser("appendix-e", help="MeDZO vs tuned CAB1.1 suite"))
    p.add_argument("--T", type=int, default=100_000)
    p.add_argument("--runs", type=int, default=20)
    p.add_argument(
        "--alphas",
        default=",".join(str(a) for a in APPENDIX_E_ALPHAS),
        help="assumed alpha grid for CAB1.1",
    )
    p.add_argument("--envs", default="f,g,garland")

    p = _common(sub.add_parser("rates", help="theta_m rate curves CSV"))
    p.add_argument("--m", default="0.5,0.6,0.7,0.8,0.9,1.0", help="comma list of m")
    p.add_argument("--alphas", default="log:0.01:1000:200", help="alpha grid spec")

    p = _common(sub.add_parser("lowerbound", help="hypothesis family samples CSV"))
    p.add_argument("--B", type=float, required=True)
    p.add_argument("--L", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--ell", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=2.0)
    p.add_argument("--M", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=None, help="override preset needle height")
    p.add_argument("--cells", type=int, default=None, help="override preset cell count")
    p.add_argument("--grid", type=int, default=2001)
    p.add_argument("--T", type=int, default=None, help="horizon for the bound value")
    return ap


def _regret_command(args, algo):
    cfg = ExperimentConfig(
        env=args.env,
        algo=algo,
        horizon=args.T,
        runs=args.runs,
        seed=args.seed,
        L=getattr(args, "L", 1.0),
        alpha=getattr(args, "alpha", 1.0),
        B=getattr(args, "B", None),
        m=getattr(args, "m", 0.5),
        force=getattr(args, "force", False),
        noise=args.noise,
        stride=args.stride,
        threads=args.threads,
    )
    dump = getattr(args, "dump_regimes", False)
    res = run_experiment(cfg, dump_regimes=dump)
    write_experiment(res, args.out_dir, dump_regimes=dump)
    print(
        f"{algo}: env={args.env} T={args.T} runs={args.runs} "
        f"final regret {res.final_mean:.6g} +- {res.final_stderr:.6g} "
        f"-> {args.out_dir}"
    )
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    cmd = args.command

    if cmd == "run" and args.algo != "gpo":
        return _regret_command(args, args.algo)
    if cmd in ("cab1", "medzo", "medzo-anytime"):
        return _regret_command(args, cmd)

    if cmd == "gpo" or (cmd == "run" and args.algo == "gpo"):
        cfg = ExperimentConfig(
            env=args.env,
            algo="gpo",
            horizon=args.T,
            runs=args.runs,
            seed=args.seed,
            noise=args.noise,
            threads=args.threads,
        )
        res = run_gpo_experiment(cfg)
        write_gpo_experiment(res, args.out_dir)
        print(
            f"gpo: env={args.env} T={args.T} runs={args.runs} "
            f"mean simple regret {res.mean:.6g} +- {res.stderr:.6g} -> {args.out_dir}"
        )
        return 0

    if cmd == "moss-bench":
        cfg = ExperimentConfig(
            env="none",
            algo="moss",
            horizon=args.T,
            runs=args.runs,
            seed=args.seed,
            noise=args.noise,
            threads=args.threads,
            n_arms=args.n_arms,
            gap=args.gap,
        )
        res = run_experiment(cfg)
        write_experiment(res, args.out_dir)
        bound = 18.0 * math.sqrt(args.n_arms * args.T)
        print(
            f"moss: K={args.n_arms} T={args.T} runs={args.runs} "
            f"final regret {res.final_mean:.6g} +- {res.final_stderr:.6g} "
            f"(bound {bound:.6g}) -> {args.out_dir}"
        )
        return 0

    if cmd == "appendix-e":
        alphas = tuple(float(s) for s in args.alphas.split(","))
        envs = tuple(args.envs.split(","))
        out = appendix_e_suite(
            args.T,
            args.runs,
            args.seed,
            out_dir=args.out_dir,
            alphas=alphas,
            envs=envs,
            threads=args.threads,
        )
        for env, cells in out.items():
            medzo_final = cells["medzo"].final_mean
            worst = max(
                v.final_mean for k, v in cells.items() if isinstance(k, tuple)
            )
            print(
                f"appendix-e {env}: medzo {medzo_final:.6g}, "
                f"worst tuned cab1 {worst:.6g} -> {args.out_dir}"
            )
        return 0

    if cmd == "rates":
        ms = [float(s) for s in args.m.split(",")]
        alphas = _parse_grid(args.alphas)
        os.makedirs(args.out_dir, exist_ok=True)
        path = os.path.join(args.out_dir, "rates.csv")
        write_rates_csv(path, rate_curve_rows(ms, alphas))
        print(f"rates: {len(ms)} curves x {len(alphas)} alphas -> {path}")
        return 0

    if cmd == "lowerbound":
        rough = HolderParams(args.L, args.alpha)
        smooth = HolderParams(args.ell, args.gamma)
        if args.delta is not None and args.cells is not None:
            delta, cells = args.delta, args.cells
        else:
            delta, cells = proof_preset(args.B, rough, M=args.M)
        fam = lowerbound_family(args.M, delta, cells, rough, smooth)
        chk = globreg_check(delta, cells, rough, smooth)
        os.makedirs(args.out_dir, exist_ok=True)
        path = os.path.join(args.out_dir, "family.csv")
        write_family_csv(path, fam, grid_n=args.grid)
        meta = {
            "B": args.B,
            "M": args.M,
            "delta": fmt9(delta),
            "cells": cells,
            "rough_L": args.L,
            "rough_alpha": args.alpha,
            "smooth_L": args.ell,
            "smooth_gamma": args.gamma,
            "phi0_ok": int(chk.phi0_ok),
            "phii_ok": int(chk.phii_ok),
        }
        if args.T is not None:
            meta["lower_bound"] = fmt9(
                adaptive_lower_bound(
                    args.B, args.T, args.L, args.alpha, ell=args.ell, gamma=args.gamma
                )
            )
        write_meta_csv(os.path.join(args.out_dir, "meta.csv"), meta)
        print(
            f"lowerbound: K={cells} delta={delta:.6g} "
            f"phi0_ok={chk.phi0_ok} phii_ok={chk.phii_ok} -> {path}"
        )
        return 0

    raise AssertionError(f"unhandled command {cmd}")


if __name__ == "__main__":
    sys.exit(main())
