"""Independent oracles used across test modules.

These deliberately re-derive behavior from the definitions (naive argmax
scans, literal formulas) rather than calling package internals, so they can
catch transcription bugs in the fast paths.
"""

import math

import numpy as np


def naive_moss_pulls(values, horizon):
    """Literal MOSS simulation on deterministic per-arm values.

    Linear argmax scan with first-max tie-breaking, unpulled arms forced in
    index order.  Returns the pull sequence.
    """
    k = len(values)
    counts = [0] * k
    sums = [0.0] * k
    pulls = []
    for _ in range(horizon):
        arm = None
        for i in range(k):
            if counts[i] == 0:
                arm = i
                break
        if arm is None:
            best = -math.inf
            for i in range(k):
                mu = sums[i] / counts[i]
                inside = math.log(horizon / (k * counts[i]))
                bonus = math.sqrt(max(inside, 0.0) / counts[i])
                if mu + bonus > best:
                    best = mu + bonus
                    arm = i
        pulls.append(arm)
        counts[arm] += 1
        sums[arm] += values[arm]
    return pulls


def random_dyadic_piecewise(rng, denom=64):
    """Random piecewise-linear payoff with knots on multiples of 1/denom."""
    n_interior = int(rng.integers(2, 8))
    interior = rng.choice(np.arange(1, denom), size=n_interior, replace=False)
    knots = np.concatenate(([0.0], np.sort(interior) / denom, [1.0]))
    values = rng.random(knots.size)
    return knots, values


def piecewise_exact_mean(knots, values, a, b):
    """Exact mean of a piecewise-linear function over [a, b] by trapezoids.

    Assumes a and b are themselves knots of the refinement grid, so clip the
    segment endpoints against [a, b] and integrate each trapezoid exactly.
    """
    xs = np.asarray(knots, dtype=np.float64)
    ys = np.asarray(values, dtype=np.float64)
    total = 0.0
    for j in range(xs.size - 1):
        lo = max(a, xs[j])
        hi = min(b, xs[j + 1])
        if hi <= lo:
            continue
        seg = xs[j + 1] - xs[j]
        ylo = ys[j] + (ys[j + 1] - ys[j]) * (lo - xs[j]) / seg
        yhi = ys[j] + (ys[j + 1] - ys[j]) * (hi - xs[j]) / seg
        total += 0.5 * (ylo + yhi) * (hi - lo)
    return total / (b - a)
