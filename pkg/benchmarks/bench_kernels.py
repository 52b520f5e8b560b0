"""Timing comparison of the jitted kernels against the pure-numpy fallback.

Runs a fixed workload in this process, then re-runs it in a subprocess with
CABANDITS_NO_NUMBA toggled, and prints both timings.  Usage:

    python3 benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time

import numpy as np


def workload():
    from cabandits import (
        BanditProblem,
        ExperimentConfig,
        HolderParams,
        make_rng,
        medzo_run,
        run_experiment,
        single_peak,
    )
    import cabandits._kernels as kernels

    times = {}

    # many-armed CAB1.1: 14678 cells, the acceptance suite's hardest cell
    cfg = ExperimentConfig(
        env="f", algo="cab1", horizon=100_000, runs=5, seed=0, L=1.0, alpha=0.1
    )
    t0 = time.perf_counter()
    run_experiment(cfg)
    times["cab1 a=0.1 T=1e5 x5"] = time.perf_counter() - t0

    # MeDZO with its empirical-measure regimes
    problem = BanditProblem.make(single_peak(1.0, 1.0, 0.3, top=0.8))
    t0 = time.perf_counter()
    for r in range(10):
        medzo_run(2**8, 2**16, problem, make_rng(1, r))
    times["medzo B=256 T=2^16 x10"] = time.perf_counter() - t0

    # plain MOSS on means
    cfg = ExperimentConfig(
        env="none", algo="moss", horizon=200_000, runs=10, seed=2, n_arms=50
    )
    t0 = time.perf_counter()
    run_experiment(cfg)
    times["moss K=50 T=2e5 x10"] = time.perf_counter() - t0

    return kernels.NUMBA_ACTIVE, times


def main():
    active, times = workload()
    backend = "numba" if active else "numpy-fallback"
    print(f"backend: {backend}", flush=True)
    for name, dt in times.items():
        print(f"  {name}: {dt:.3f}s", flush=True)
    if os.environ.get("CABANDITS_BENCH_CHILD"):
        return
    # flip the backend in a child process and run the same workload
    env = dict(os.environ, CABANDITS_BENCH_CHILD="1")
    if active:
        env["CABANDITS_NO_NUMBA"] = "1"
        note = "CABANDITS_NO_NUMBA=1 (pure numpy)"
    else:
        env.pop("CABANDITS_NO_NUMBA", None)
        note = "CABANDITS_NO_NUMBA unset (numba)"
    print(f"\nre-running the same workload with {note}...\n", flush=True)
    subprocess.run([sys.executable, os.path.abspath(__file__)], env=env, check=True)


if __name__ == "__main__":
    main()
