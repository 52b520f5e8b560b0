"""Monte Carlo experiment harness with reproducible CSV output.

Run r of an experiment uses a PCG64 generator seeded with
derive_seed(base_seed, r), so runs are independent of execution order and
thread count; aggregation always reduces in run-index order.  Numeric CSV
fields are written in fixed notation with 9 significant digits and '.' as
the decimal separator, so repeated invocations are byte-identical
(meta.csv is the exception: it records wall time).
"""

import csv
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict

import numpy as np

from . import __version__
from . import _kernels
from .cab1 import cab11_nonadaptive, kstar
from .envs import BanditProblem, HolderParams, NoiseModel, make_test_function
from .gpo import gpo_run
from .measures import measure_mean
from .medzo import anytime_medzo, medzo_run
from .moss import moss_run
from .util import derive_seed


def fmt9(x):
    """Fixed-notation decimal with 9 significant digits."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0"
    dec = 8 - math.floor(math.log10(abs(x)))
    if dec < 0:
        dec = 0
    return f"{x:.{dec}f}"


def make_rng(base_seed, run_index):
    return np.random.Generator(np.random.PCG64(derive_seed(base_seed, run_index)))


def checkpoints(horizon, stride=None):
    """Steps at which traces are recorded: powers of two, every stride-th
    step (default horizon/100), and the horizon itself."""
    if stride is None:
        stride = max(1, horizon // 100)
    if stride < 1:
        raise ValueError("stride must be at least 1")
    cps = set()
    k = 1
    while k <= horizon:
        cps.add(k)
        k *= 2
    cps.update(range(stride, horizon + 1, stride))
    cps.add(horizon)
    return np.array(sorted(cps), dtype=np.int64)


@dataclass
class ExperimentConfig:
    env: str
    algo: str  # cab1 | medzo | medzo-anytime | moss
    horizon: int
    runs: int
    seed: int
    L: float = 1.0
    alpha: float = 1.0
    B: float = None  # medzo budget; None means sqrt(horizon)
    m: float = 0.5  # anytime exponent
    force: bool = False
    noise: str = "gaussian"
    stride: int = None
    threads: int = 1
    n_arms: int = 10  # moss bench
    gap: float = 0.05  # moss bench mean spacing

    def resolved_B(self):
        return math.sqrt(self.horizon) if self.B is None else float(self.B)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    checkpoints: np.ndarray
    per_run: np.ndarray = field(repr=False)  # runs x checkpoints, cum regret
    mean: np.ndarray = field(repr=False)
    std: np.ndarray = field(repr=False)
    stderr: np.ndarray = field(repr=False)
    meta: dict = field(default_factory=dict)
    regime_rows: list = field(default_factory=list, repr=False)

    @property
    def n(self):
        return self.per_run.shape[0]

    @property
    def final_mean(self):
        return float(self.mean[-1])

    @property
    def final_std(self):
        return float(self.std[-1])

    @property
    def final_stderr(self):
        return float(self.stderr[-1])


def _build_problem(config):
    payoff = make_test_function(config.env)
    return BanditProblem.make(payoff, NoiseModel(config.noise))


def _one_trace(config, problem, rng):
    algo = config.algo
    if algo == "cab1":
        params = HolderParams(config.L, config.alpha)
        return cab11_nonadaptive(config.horizon, params, problem, rng), None
    if algo == "medzo":
        res = medzo_run(
            config.resolved_B(), config.horizon, problem, rng, force=config.force
        )
        return res.trace, res
    if algo == "medzo-anytime":
        res = anytime_medzo(config.m, config.horizon, problem, rng)
        return res.trace, res
    if algo == "moss":
        means = 0.5 - config.gap * np.arange(config.n_arms)
        sd = 0.5 if config.noise == "gaussian" else 0.0
        return moss_run(means, config.horizon, rng, noise_sd=sd), None
    raise ValueError(f"unknown algorithm {config.algo!r}")


def run_experiment(config, dump_regimes=False):
    """Monte Carlo over config.runs independent episodes.

    Returns per-checkpoint cumulative-regret statistics; the reduction is
    in run-index order regardless of thread count.
    """
    if config.runs < 1:
        raise ValueError("need at least one run")
    problem = None if config.algo == "moss" else _build_problem(config)
    cps = checkpoints(config.horizon, config.stride)
    t0 = time.perf_counter()

    def worker(run_index):
        rng = make_rng(config.seed, run_index)
        trace, extra = _one_trace(config, problem, rng)
        cum = trace.cum_regret[cps - 1]
        rows = []
        if dump_regimes and extra is not None and hasattr(extra, "regimes"):
            for reg in extra.regimes:
                rows.append(
                    (
                        run_index,
                        reg.index,
                        reg.n_cells,
                        reg.length,
                        reg.regret,
                        measure_mean(reg.nu_hat, problem.payoff),
                    )
                )
        return cum, rows

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as ex:
            results = list(ex.map(worker, range(config.runs)))
    else:
        results = [worker(r) for r in range(config.runs)]
    per_run = np.vstack([cum for cum, _ in results])
    regime_rows = [row for _, rows in results for row in rows]
    mean = per_run.mean(axis=0)
    if config.runs > 1:
        std = per_run.std(axis=0, ddof=1)
    else:
        std = np.zeros_like(mean)
    stderr = std / math.sqrt(config.runs)
    meta = {
        "package_version": __version__,
        "numba_active": int(_kernels.NUMBA_ACTIVE),
        "algo": config.algo,
        "env": config.env,
        "horizon": config.horizon,
        "runs": config.runs,
        "base_seed": config.seed,
        "noise": config.noise,
        "threads": config.threads,
        "checkpoint_count": len(cps),
        "wall_time_s": f"{time.perf_counter() - t0:.3f}",
    }
    if config.algo == "cab1":
        meta["L"] = config.L
        meta["alpha"] = config.alpha
        meta["kstar"] = kstar(HolderParams(config.L, config.alpha), config.horizon)
    elif config.algo == "medzo":
        meta["B"] = config.resolved_B()
    elif config.algo == "medzo-anytime":
        meta["m"] = config.m
    elif config.algo == "moss":
        meta["n_arms"] = config.n_arms
        meta["gap"] = config.gap
    return ExperimentResult(
        config=config,
        checkpoints=cps,
        per_run=per_run,
        mean=mean,
        std=std,
        stderr=stderr,
        meta=meta,
        regime_rows=regime_rows,
    )


@dataclass
class GpoExperimentResult:
    config: ExperimentConfig
    simple_regrets: np.ndarray = field(repr=False)
    rows: list = field(repr=False)
    meta: dict = field(default_factory=dict)

    @property
    def mean(self):
        return float(np.mean(self.simple_regrets))

    @property
    def std(self):
        if self.simple_regrets.size < 2:
            return 0.0
        return float(np.std(self.simple_regrets, ddof=1))

    @property
    def stderr(self):
        return self.std / math.sqrt(self.simple_regrets.size)


def run_gpo_experiment(config):
    if config.runs < 1:
        raise ValueError("need at least one run")
    problem = _build_problem(config)
    t0 = time.perf_counter()

    def worker(run_index):
        rng = make_rng(config.seed, run_index)
        res = gpo_run(config.horizon, problem, rng)
        return (
            run_index,
            res.simple_regret,
            res.recommendation,
            res.chosen,
            float(res.validation_means[res.chosen]),
        )

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as ex:
            rows = list(ex.map(worker, range(config.runs)))
    else:
        rows = [worker(r) for r in range(config.runs)]
    regrets = np.array([r[1] for r in rows])
    meta = {
        "package_version": __version__,
        "numba_active": int(_kernels.NUMBA_ACTIVE),
        "algo": "gpo",
        "env": config.env,
        "horizon": config.horizon,
        "runs": config.runs,
        "base_seed": config.seed,
        "noise": config.noise,
        "threads": config.threads,
        "mean_simple_regret": fmt9(float(np.mean(regrets))),
        "wall_time_s": f"{time.perf_counter() - t0:.3f}",
    }
    return GpoExperimentResult(
        config=config, simple_regrets=regrets, rows=rows, meta=meta
    )


def write_runs_csv(path, cps, per_run):
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        f.write("run_id,t,cum_regret\n")
        for r in range(per_run.shape[0]):
            row = per_run[r]
            for j, t in enumerate(cps):
                f.write(f"{r},{int(t)},{fmt9(row[j])}\n")


def write_aggregate_csv(path, cps, mean, std, stderr, n):
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        f.write("t,mean,std,stderr,n\n")
        for j, t in enumerate(cps):
            f.write(
                f"{int(t)},{fmt9(mean[j])},{fmt9(std[j])},{fmt9(stderr[j])},{n}\n"
            )


def write_meta_csv(path, meta):
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in meta.items():
            w.writerow([k, v])


def write_regimes_csv(path, rows):
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        f.write("run_id,regime,cells,length,regret,nu_mean\n")
        for run_id, regime, cells, length, regret, nu_mean in rows:
            f.write(
                f"{run_id},{regime},{cells},{length},{fmt9(regret)},{fmt9(nu_mean)}\n"
            )


def write_gpo_csv(path, rows):
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        f.write("run_id,simple_regret,recommendation,chosen_phase,validation_mean\n")
        for run_id, sr, rec, chosen, vmean in rows:
            f.write(f"{run_id},{fmt9(sr)},{fmt9(rec)},{chosen},{fmt9(vmean)}\n")


def write_experiment(result, out_dir, dump_regimes=False):
    os.makedirs(out_dir, exist_ok=True)
    write_runs_csv(os.path.join(out_dir, "runs.csv"), result.checkpoints, result.per_run)
    write_aggregate_csv(
        os.path.join(out_dir, "aggregate.csv"),
        result.checkpoints,
        result.mean,
        result.std,
        result.stderr,
        result.n,
    )
    write_meta_csv(os.path.join(out_dir, "meta.csv"), result.meta)
    if dump_regimes:
        write_regimes_csv(os.path.join(out_dir, "regimes.csv"), result.regime_rows)


def write_gpo_experiment(result, out_dir):
    os.makedirs(out_dir, exist_ok=True)
    write_gpo_csv(os.path.join(out_dir, "gpo.csv"), result.rows)
    write_meta_csv(os.path.join(out_dir, "meta.csv"), result.meta)


APPENDIX_E_ALPHAS = (0.1, 0.5, 1.0, 2.0, 5.0)
APPENDIX_E_ENVS = ("f", "g", "garland")


def appendix_e_suite(
    horizon,
    runs,
    seed,
    out_dir=None,
    alphas=APPENDIX_E_ALPHAS,
    envs=APPENDIX_E_ENVS,
    threads=1,
):
    """Figure-3-style comparison: MeDZO(B=sqrt(T)) against CAB1.1 tuned to
    each assumed alpha (L=1), on each named test function.

    Every cell gets its own derived base seed so cells are independent.
    Returns {env: {"medzo": result, ("cab1", alpha): result}} and, when
    out_dir is given, writes per-cell CSV triplets plus one summary CSV per
    env with layout algo,alpha,kstar,final_mean,final_std,final_stderr,n
    (the medzo row leaves alpha and kstar empty).
    """
    out = {}
    cell = 0
    for env in envs:
        out[env] = {}
        rows = []
        cfg = ExperimentConfig(
            env=env,
            algo="medzo",
            horizon=horizon,
            runs=runs,
            seed=derive_seed(seed, cell),
            threads=threads,
        )
        cell += 1
        res = run_experiment(cfg)
        out[env]["medzo"] = res
        rows.append(("medzo", "", "", res.final_mean, res.final_std, res.final_stderr, res.n))
        if out_dir:
            write_experiment(res, os.path.join(out_dir, env, "medzo"))
        for alpha in alphas:
            cfg = ExperimentConfig(
                env=env,
                algo="cab1",
                horizon=horizon,
                runs=runs,
                seed=derive_seed(seed, cell),
                L=1.0,
                alpha=alpha,
                threads=threads,
            )
            cell += 1
            res = run_experiment(cfg)
            out[env][("cab1", alpha)] = res
            k = kstar(HolderParams(1.0, alpha), horizon)
            rows.append(
                ("cab1", alpha, k, res.final_mean, res.final_std, res.final_stderr, res.n)
            )
            if out_dir:
                write_experiment(
                    res, os.path.join(out_dir, env, f"cab1_a{alpha:g}")
                )
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
            path = os.path.join(out_dir, f"summary_{env}.csv")
            with open(path, "w", newline="\n", encoding="utf-8") as f:
                f.write("algo,alpha,kstar,final_mean,final_std,final_stderr,n\n")
                for algo, alpha, k, fm, fs, fe, n in rows:
                    a = fmt9(alpha) if alpha != "" else ""
                    f.write(f"{algo},{a},{k},{fmt9(fm)},{fmt9(fs)},{fmt9(fe)},{n}\n")
    return out


def rate_curve_rows(ms, alphas):
    """Long-format theta_m curves with the nonadaptive reference column."""
    from .rates import minimax_exponent, theta

    rows = []
    for m in ms:
        for a in alphas:
            rows.append((m, a, theta(m, a), minimax_exponent(a)))
    return rows


def write_rates_csv(path, rows):
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        f.write("m,alpha,theta,minimax\n")
        for m, a, th, mm in rows:
            f.write(f"{fmt9(m)},{fmt9(a)},{fmt9(th)},{fmt9(mm)}\n")


def write_family_csv(path, family, grid_n=2001):
    """Samples of every phi_i on a uniform grid, long format i,x,phi."""
    xs = np.linspace(0.0, 1.0, grid_n)
    with open(path, "w", newline="\n", encoding="utf-8") as f:
        f.write("i,x,phi\n")
        for i, fn in enumerate(family.functions):
            vals = fn(xs)
            for x, v in zip(xs, vals):
                f.write(f"{i},{fmt9(x)},{fmt9(v)}\n")
