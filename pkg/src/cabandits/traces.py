"""Per-run play records shared by the discrete and continuum algorithms."""

from dataclasses import dataclass

import numpy as np


@dataclass
class RunTrace:
    """What one episode played and earned, step by step.

    measure_idx[t] is the meta-arm pulled at step t (the arm itself for
    discrete runs), arms[t] the arm in [0,1] that was played, rewards[t] the
    noisy reward fed back to the learner, and mean_payoffs[t] the expected
    payoff credited for regret accounting: f(X_t) in sampled runs, the
    pulled measure's mean in expected-value runs.
    """

    max_value: float
    measure_idx: np.ndarray
    arms: np.ndarray
    rewards: np.ndarray
    mean_payoffs: np.ndarray

    def __len__(self):
        return int(self.rewards.shape[0])

    @property
    def cum_regret(self):
        """Cumulative pseudo-regret after each step: t*M - sum of mean payoffs."""
        steps = np.arange(1, len(self) + 1, dtype=np.float64)
        return steps * self.max_value - np.cumsum(self.mean_payoffs)

    @property
    def total_regret(self):
        if len(self) == 0:
            return 0.0
        return float(self.cum_regret[-1])
