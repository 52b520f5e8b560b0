"""MeDZO: memorize, discretize, zoom out.

Given a budget-style input B and horizon T, the run is split into p =
ceil(log2 B) regimes.  Regime i lasts 2**(p+i) rounds and plays CAB1.1 over
a fresh discretization of 2**(p+2-i) cells plus one empirical measure per
completed earlier regime (the "memorized" plays).  Discretizations start
fine and get coarser while regimes get longer, so some regime roughly
matches the unknown smoothness; the memorized measures carry its progress
forward.  Expected pseudo-regret is at most
412 * (log2 B)**1.5 * max(B, T * L**(1/(a+1)) * B**(-a/(a+1))).

The anytime variant restarts MeDZO on doubling horizons with B = 2**(i*m),
trading the exponent m in [1/2, 1] between the two branches of the bound.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .cab1 import cab11_run
from .measures import MeasureSet, disc, empirical_measure, measure_mean, uniform_measure
from .traces import RunTrace
from .util import ceil_log2_guarded


@dataclass(frozen=True)
class MedzoSchedule:
    """Regime layout for one MeDZO run: (cells, length) per regime.

    Invariants: n_cells[i] * lengths[i] == 2**(2p+2) for every regime, and
    the full schedule lasts ends[-1] == 2**(p+1) * (2**p - 1) >= B*B rounds.
    """

    B: float
    p: int
    n_cells: tuple
    lengths: tuple
    ends: tuple

    @property
    def total(self):
        return self.ends[-1]


def schedule(B):
    if B < 2:
        raise ValueError("B must be at least 2")
    p = ceil_log2_guarded(B)
    n_cells = tuple(2 ** (p + 2 - i) for i in range(1, p + 1))
    lengths = tuple(2 ** (p + i) for i in range(1, p + 1))
    ends = tuple(np.cumsum(lengths).tolist())
    return MedzoSchedule(B=float(B), p=p, n_cells=n_cells, lengths=lengths, ends=ends)


@dataclass
class RegimeRecord:
    index: int
    n_cells: int
    start: int
    length: int
    measures: MeasureSet = field(repr=False)
    nu_hat: object = field(repr=False)
    regret: float = 0.0


@dataclass
class MedzoResult:
    trace: RunTrace
    regimes: list
    schedule: MedzoSchedule
    regime_ids: np.ndarray = field(repr=False)


def medzo_run(B, horizon, problem, rng, force=False, expected=False):
    """Run MeDZO for `horizon` rounds.

    Requires B >= sqrt(horizon) so the schedule covers the horizon; pass
    force=True to experiment below that, as long as the schedule still
    covers the requested rounds.  expected=True uses expectation semantics
    as in cab11_run: measure pulls deterministically pay their mean, and a
    memorized regime pays its realized average.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if B * B < horizon * (1.0 - 1e-12) and not force:
        raise ValueError(
            f"B={B} is below sqrt(horizon)={math.sqrt(horizon):.6g}; "
            "the zoom-out schedule only covers B**2 rounds (force=True to override)"
        )
    sched = schedule(B)
    if sched.total < horizon:
        raise ValueError(
            f"schedule with B={B} covers only {sched.total} rounds, "
            f"fewer than horizon={horizon}"
        )
    T = int(horizon)
    arms = np.empty(T)
    rewards = np.empty(T)
    fx = np.empty(T)
    idx = np.empty(T, dtype=np.int64)
    regime_ids = np.empty(T, dtype=np.int64)
    bounds = [0]
    staged = []
    pos = 0
    for i in range(1, sched.p + 1):
        if pos >= T:
            break
        k_cells = sched.n_cells[i - 1]
        length = min(sched.lengths[i - 1], T - pos)
        n_meas = k_cells + (i - 1)
        sl = slice(pos, pos + length)
        regime_ids[sl] = i
        if expected:
            vals = np.empty(n_meas)
            for j in range(k_cells):
                vals[j] = measure_mean(
                    uniform_measure(j / k_cells, (j + 1) / k_cells), problem.payoff
                )
            for r in range(i - 1):
                vals[k_cells + r] = float(
                    np.mean(rewards[bounds[r] : bounds[r + 1]])
                )
            _kernels.run_discrete(vals, length, np.zeros(length), idx[sl], rewards[sl])
            reps = np.empty(n_meas)
            reps[:k_cells] = (np.arange(k_cells) + 0.5) / k_cells
            for r in range(i - 1):
                reps[k_cells + r] = arms[bounds[r]]
            arms[sl] = reps[idx[sl]]
            fx[sl] = vals[idx[sl]]
        else:
            lo = np.zeros(n_meas)
            hi = np.zeros(n_meas)
            emp_start = np.full(n_meas, -1, dtype=np.int64)
            emp_end = np.full(n_meas, -1, dtype=np.int64)
            for j in range(k_cells):
                lo[j] = j / k_cells
                hi[j] = (j + 1) / k_cells
            for r in range(i - 1):
                emp_start[k_cells + r] = bounds[r]
                emp_end[k_cells + r] = bounds[r + 1]
            u = rng.random(length)
            noise = problem.noise.draw(rng, length)
            # memorized measures are read straight out of the play buffer:
            # they are earlier slices of `arms`, disjoint from this regime's
            _kernels.run_cab(
                length,
                lo,
                hi,
                emp_start,
                emp_end,
                arms,
                problem.payoff.kind,
                problem.payoff.params,
                u,
                noise,
                idx[sl],
                arms[sl],
                rewards[sl],
                fx[sl],
            )
        staged.append((i, k_cells, pos, length))
        pos += length
        bounds.append(pos)
    if not expected:
        fx = problem.payoff(arms)
    trace = RunTrace(
        max_value=problem.max_value,
        measure_idx=idx,
        arms=arms,
        rewards=rewards,
        mean_payoffs=fx,
    )
    cum = trace.cum_regret
    regimes = []
    for i, k_cells, start, length in staged:
        cells = disc(k_cells).measures
        memor = [
            empirical_measure(arms[bounds[r] : bounds[r + 1]], label=f"nu{r + 1}")
            for r in range(i - 1)
        ]
        nu = empirical_measure(arms[start : start + length], label=f"nu{i}")
        before = cum[start - 1] if start > 0 else 0.0
        regimes.append(
            RegimeRecord(
                index=i,
                n_cells=k_cells,
                start=start,
                length=length,
                measures=MeasureSet(cells + memor),
                nu_hat=nu,
                regret=float(cum[start + length - 1] - before),
            )
        )
    return MedzoResult(trace=trace, regimes=regimes, schedule=sched, regime_ids=regime_ids)


def medzo_bound(B, horizon, L, alpha):
    """Regret guarantee 412 * (log2 B)**1.5 * max(B, T*L**(1/(a+1))*B**(-a/(a+1)))."""
    if B < 2 or horizon < 1 or L <= 0 or alpha <= 0:
        raise ValueError("need B >= 2, horizon >= 1, L > 0, alpha > 0")
    approx = horizon * L ** (1.0 / (alpha + 1.0)) * B ** (-alpha / (alpha + 1.0))
    return 412.0 * math.log2(B) ** 1.5 * max(float(B), approx)


def medzo_sqrt_bound(horizon, L, alpha):
    """The B = sqrt(T) specialization:
    146 * (log2 T)**1.5 * L**(1/(a+1)) * T**((a+2)/(2a+2)), for L > 1/sqrt(T)."""
    if horizon < 2 or L <= 0 or alpha <= 0:
        raise ValueError("need horizon >= 2, L > 0, alpha > 0")
    if L * L * horizon <= 1.0:
        warnings.warn("bound requires L > 1/sqrt(T)", UserWarning)
    return (
        146.0
        * math.log2(horizon) ** 1.5
        * L ** (1.0 / (alpha + 1.0))
        * horizon ** ((alpha + 2.0) / (2.0 * alpha + 2.0))
    )


@dataclass
class AnytimeSegment:
    index: int
    B: float
    start: int
    length: int
    result: MedzoResult = field(repr=False)


@dataclass
class AnytimeResult:
    trace: RunTrace
    segments: list


def anytime_medzo(m, horizon, problem, rng, expected=False):
    """Doubling-trick MeDZO: segment i lasts 2**i rounds with B = 2**(i*m).

    m in [1/2, 1] keeps B >= sqrt(segment length), so every inner run
    satisfies the MeDZO precondition (B floors at 2 for tiny segments).
    """
    if not (0.5 <= m <= 1.0):
        raise ValueError("m must lie in [1/2, 1]")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    T = int(horizon)
    segments = []
    chunks = []
    pos = 0
    i = 0
    while pos < T:
        length = min(2**i, T - pos)
        B = max(2.0, 2.0 ** (i * m))
        inner = medzo_run(B, length, problem, rng, expected=expected)
        segments.append(
            AnytimeSegment(index=i, B=B, start=pos, length=length, result=inner)
        )
        chunks.append(inner.trace)
        pos += length
        i += 1
    trace = RunTrace(
        max_value=problem.max_value,
        measure_idx=np.concatenate([c.measure_idx for c in chunks]),
        arms=np.concatenate([c.arms for c in chunks]),
        rewards=np.concatenate([c.rewards for c in chunks]),
        mean_payoffs=np.concatenate([c.mean_payoffs for c in chunks]),
    )
    return AnytimeResult(trace=trace, segments=segments)


def anytime_bound(m, horizon, L, alpha):
    """Doubling-trick guarantee:
    4000 * (log2 T**m)**1.5 * max(T**m, T * L**(1/(a+1)) * T**(-m*a/(a+1)))."""
    if not (0.5 <= m <= 1.0):
        raise ValueError("m must lie in [1/2, 1]")
    if horizon < 2 or L <= 0 or alpha <= 0:
        raise ValueError("need horizon >= 2, L > 0, alpha > 0")
    tm = float(horizon) ** m
    approx = horizon * L ** (1.0 / (alpha + 1.0)) * tm ** (-alpha / (alpha + 1.0))
    return 4000.0 * (m * math.log2(horizon)) ** 1.5 * max(tm, approx)
