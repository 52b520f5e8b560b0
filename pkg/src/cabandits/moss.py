"""MOSS for finite-armed bandits.

Index: empirical mean + sqrt(max(ln(horizon / (n_arms * pulls)), 0) / pulls),
natural log.  Unpulled arms are forced first in index order; ties in the
index go to the lowest arm.  Guarantees expected pseudo-regret at most
18 * sqrt(n_arms * horizon) on sigma <= 1/2 subgaussian rewards when
horizon >= n_arms.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .traces import RunTrace


@dataclass
class MossState:
    horizon: int
    n_arms: int
    counts: np.ndarray = field(repr=False)
    sums: np.ndarray = field(repr=False)
    t: int = 0


def moss_init(n_arms, horizon):
    if n_arms < 1:
        raise ValueError("need at least one arm")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    return MossState(
        horizon=int(horizon),
        n_arms=int(n_arms),
        counts=np.zeros(n_arms, dtype=np.int64),
        sums=np.zeros(n_arms, dtype=np.float64),
    )


def moss_indices(state):
    """Current index of every pulled arm; unpulled arms get +inf."""
    out = np.full(state.n_arms, np.inf)
    pulled = state.counts > 0
    n = state.counts[pulled]
    mu = state.sums[pulled] / n
    bonus = np.sqrt(
        np.maximum(np.log(state.horizon / (state.n_arms * n)), 0.0) / n
    )
    out[pulled] = mu + bonus
    return out


def moss_select(state):
    if state.t >= state.horizon:
        raise RuntimeError("horizon exhausted: no selections left")
    unpulled = np.flatnonzero(state.counts == 0)
    if unpulled.size:
        return int(unpulled[0])
    return int(np.argmax(moss_indices(state)))


def moss_update(state, arm, reward):
    if not (0 <= arm < state.n_arms):
        raise ValueError(f"arm {arm} out of range for {state.n_arms} arms")
    if state.t >= state.horizon:
        raise RuntimeError("horizon exhausted: no updates left")
    state.counts[arm] += 1
    state.sums[arm] += reward
    state.t += 1


def moss_run(means, horizon, rng, noise_sd=0.5):
    """Play MOSS for `horizon` rounds on fixed arm means with gaussian noise.

    Pass noise_sd=0 for the deterministic zero-noise variant.  Returns a
    RunTrace whose regret is measured against max(means).
    """
    means = np.asarray(means, dtype=np.float64)
    if means.ndim != 1 or means.size == 0:
        raise ValueError("means must be a nonempty 1-d array")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    noise = rng.normal(0.0, noise_sd, horizon) if noise_sd > 0 else np.zeros(horizon)
    arms = np.empty(horizon, dtype=np.int64)
    rewards = np.empty(horizon, dtype=np.float64)
    _kernels.run_discrete(means, horizon, noise, arms, rewards)
    return RunTrace(
        max_value=float(np.max(means)),
        measure_idx=arms,
        arms=arms.astype(np.float64),
        rewards=rewards,
        mean_payoffs=means[arms],
    )


def moss_bound(n_arms, horizon):
    """The distribution-free regret guarantee 18 * sqrt(n_arms * horizon)."""
    if n_arms < 1 or horizon < n_arms:
        raise ValueError("bound requires horizon >= n_arms >= 1")
    return 18.0 * float(np.sqrt(n_arms * horizon))
