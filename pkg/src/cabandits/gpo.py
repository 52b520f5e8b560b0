"""GPO: general parallel optimism, a simple-regret meta-algorithm.

The horizon is cut in half.  The first half runs p = ceil(log2 T) CAB1.1
instances side by side (phase i over the 2**i-cell discretization), each
emitting one recommendation drawn uniformly among its own plays.  The
second half replays every recommendation equally often and returns the one
with the best validation average.  Simple regret is bounded by
(54 + sqrt(pi)/2 * log2 T) * L**(1/(2a+1)) * (ceil(log2 T)/T)**(a/(2a+1))
for L >= 2**(a+1/2) * sqrt(ceil(log2 T)/T), without knowing (L, alpha).
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .cab1 import cab11_run
from .measures import disc
from .util import ceil_log2_guarded


@dataclass
class GpoResult:
    p: int
    phase_len: int
    leftover: int
    recommendations: np.ndarray
    validation_means: np.ndarray
    chosen: int
    recommendation: float
    simple_regret: float
    exploration_traces: list = field(repr=False, default_factory=list)

    @property
    def rounds_used(self):
        return 2 * self.p * self.phase_len + self.leftover


def gpo_run(horizon, problem, rng, keep_traces=False):
    """One GPO episode; needs horizon >= 8 so every phase gets a round.

    Rounds not divisible among the 2p phases replay the winning
    recommendation at the end.  Validation ties resolve to the
    lowest-indexed phase.
    """
    if horizon < 8:
        raise ValueError("GPO needs horizon >= 8")
    T = int(horizon)
    p = ceil_log2_guarded(T)
    phase_len = T // (2 * p)
    recs = np.empty(p)
    traces = []
    for i in range(1, p + 1):
        tr = cab11_run(phase_len, disc(2**i), problem, rng)
        k = min(int(rng.random() * phase_len), phase_len - 1)
        recs[i - 1] = tr.arms[k]
        if keep_traces:
            traces.append(tr)
    vmeans = np.empty(p)
    for i in range(p):
        noise = problem.noise.draw(rng, phase_len)
        # f(x) + mean(noise), not mean(f(x) + noise): same estimator, but
        # exact when the noise is off
        vmeans[i] = float(problem.payoff(recs[i]) + np.mean(noise))
    chosen = int(np.argmax(vmeans))
    leftover = T - 2 * p * phase_len
    if leftover:
        problem.noise.draw(rng, leftover)  # winner replays; rewards unused
    winner = float(recs[chosen])
    return GpoResult(
        p=p,
        phase_len=phase_len,
        leftover=leftover,
        recommendations=recs,
        validation_means=vmeans,
        chosen=chosen,
        recommendation=winner,
        simple_regret=float(problem.max_value - problem.payoff(winner)),
        exploration_traces=traces,
    )


def gpo_bound(horizon, L, alpha):
    """Simple-regret guarantee; warns when L sits below the validity floor."""
    if horizon < 8 or L <= 0 or alpha <= 0:
        raise ValueError("need horizon >= 8, L > 0, alpha > 0")
    p = ceil_log2_guarded(horizon)
    # floor check in log space so huge alpha cannot overflow
    if math.log2(L) < (alpha + 0.5) + 0.5 * math.log2(p / horizon):
        warnings.warn(
            "L below the validity floor 2**(alpha+1/2)*sqrt(p/T); "
            "the guarantee does not apply",
            UserWarning,
        )
    return (
        (54.0 + 0.5 * math.sqrt(math.pi) * math.log2(horizon))
        * L ** (1.0 / (2.0 * alpha + 1.0))
        * (p / horizon) ** (alpha / (2.0 * alpha + 1.0))
    )


def gpo_lemma_cases(L, alpha, horizon):
    """The three-way disjunction behind the GPO analysis.

    Returns booleans (tiny_L, huge_L, balanced): L below the floor, L above
    T**alpha * sqrt(p), or some phase's discretization balancing
    approximation against exploration within the 53-constant budget.  At
    least one always holds.
    """
    if horizon < 8 or L <= 0 or alpha <= 0:
        raise ValueError("need horizon >= 8, L > 0, alpha > 0")
    p = ceil_log2_guarded(horizon)
    tiny = L < 2.0 ** (alpha + 0.5) * math.sqrt(p / horizon)
    huge = L >= float(horizon) ** alpha * math.sqrt(p)
    best = min(
        L / (2.0**i) ** alpha + 36.0 * math.sqrt(p * 2.0**i / horizon)
        for i in range(1, p + 1)
    )
    balanced = best <= 53.0 * L ** (1.0 / (2.0 * alpha + 1.0)) * (p / horizon) ** (
        alpha / (2.0 * alpha + 1.0)
    )
    return tiny, huge, balanced


def cum_to_simple(trace):
    """Average pseudo-regret per round: total cumulative regret / length."""
    n = len(trace)
    if n == 0:
        raise ValueError("empty trace")
    return trace.total_regret / n
