"""Hot inner loops, jitted with numba when available.

Set CABANDITS_NO_NUMBA=1 before import to force the plain-Python fallback.
Both paths run the same source, so results are bit-identical either way;
benchmarks/bench_kernels.py measures the speed gap.

All randomness is consumed from pre-drawn arrays (uniforms for arm
sampling, gaussians for reward noise), which keeps the kernels pure and
makes runs reproducible independent of the backend and thread count.
"""

import math
import os

import numpy as np

try:
    import numba
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dep, but stay importable
    numba = None
    _HAVE_NUMBA = False

NUMBA_ACTIVE = _HAVE_NUMBA and os.environ.get("CABANDITS_NO_NUMBA", "") != "1"


def _jit(fn):
    if NUMBA_ACTIVE:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


# payoff kind codes shared with envs.MeanPayoffFunction
PAYOFF_SINES = 0
PAYOFF_TWO_BRANCH = 1
PAYOFF_GARLAND = 2
PAYOFF_PEAK = 3
PAYOFF_PIECEWISE = 4
PAYOFF_HYPOTHESIS = 5
PAYOFF_CONSTANT = 6


@_jit
def payoff_value(kind, par, x):
    """Scalar mean payoff at x for the coded function family.

    par layouts:
      PEAK        [L, alpha, xstar, M]
      PIECEWISE   [n, x_1..x_n, y_1..y_n] with x_1 = 0, x_n = 1
      HYPOTHESIS  [M, Delta, K, L, alpha, ell, gamma, i]
      CONSTANT    [c]
    Values are clamped to [0, 1].
    """
    if kind == 0:
        v = 0.5 * math.sin(13.0 * x) * math.sin(27.0 * x) + 0.5
    elif kind == 1:
        a = 3.6 * x * (1.0 - x)
        b = 1.0 - abs(x - 0.05) / 0.05
        v = a if a > b else b
    elif kind == 2:
        v = x * (1.0 - x) * (4.0 - math.sqrt(abs(math.sin(60.0 * x))))
    elif kind == 3:
        v = par[3] - par[0] * abs(x - par[2]) ** par[1]
    elif kind == 4:
        n = int(par[0])
        if x <= par[1]:
            v = par[1 + n]
        elif x >= par[n]:
            v = par[2 * n]
        else:
            j = 1
            while par[j + 1] < x:
                j += 1
            x0 = par[j]
            x1 = par[j + 1]
            y0 = par[n + j]
            y1 = par[n + j + 1]
            v = y0 + (y1 - y0) * ((x - x0) / (x1 - x0))
    elif kind == 5:
        m_top = par[0]
        delta = par[1]
        floor = m_top - delta
        ii = int(par[7])
        if x >= 0.5:
            # smooth bump shared by every member, peak at 3/4
            v = m_top - 0.5 * delta - par[5] * abs(x - 0.75) ** par[6]
            if v < floor:
                v = floor
        else:
            v = floor
            if ii >= 1:
                w = 0.5 / par[2]
                a0 = (ii - 1) * w
                b0 = ii * w
                if a0 <= x <= b0:
                    v2 = m_top - par[3] * abs(x - (a0 + b0) * 0.5) ** par[4]
                    if v2 > v:
                        v = v2
    else:
        v = par[0]
    if v < 0.0:
        v = 0.0
    elif v > 1.0:
        v = 1.0
    return v


@_jit
def _moss_index(total, count, horizon, n_arms):
    # empirical mean plus the MOSS exploration bonus, natural log
    mu = total / count
    a = math.log(horizon / (n_arms * count))
    if a < 0.0:
        a = 0.0
    return mu + math.sqrt(a / count)


@_jit
def _sift_down(hval, harm, size, i):
    # max-heap on (value, -arm): ties go to the lowest arm index
    while True:
        left = 2 * i + 1
        if left >= size:
            break
        best = left
        right = left + 1
        if right < size:
            if hval[right] > hval[best] or (
                hval[right] == hval[best] and harm[right] < harm[best]
            ):
                best = right
        if hval[best] > hval[i] or (hval[best] == hval[i] and harm[best] < harm[i]):
            tv = hval[i]
            hval[i] = hval[best]
            hval[best] = tv
            ta = harm[i]
            harm[i] = harm[best]
            harm[best] = ta
            i = best
        else:
            break


@_jit
def _heapify(hval, harm, size):
    for i in range((size - 2) // 2, -1, -1):
        _sift_down(hval, harm, size, i)


@_jit
def run_discrete(vals, horizon, noise, arms_out, rewards_out):
    """MOSS over a fixed payoff vector; pulling arm j yields vals[j] + noise[t].

    The index of an arm only moves when that arm is pulled, so selection
    keeps a heap and re-sifts just the pulled entry: O(log K) per step.
    Arms with zero pulls are forced first, in index order.
    """
    n_arms = vals.shape[0]
    counts = np.zeros(n_arms, np.int64)
    sums = np.zeros(n_arms, np.float64)
    forced = horizon if horizon < n_arms else n_arms
    for t in range(forced):
        y = vals[t] + noise[t]
        arms_out[t] = t
        rewards_out[t] = y
        counts[t] += 1
        sums[t] += y
    if horizon <= n_arms:
        return
    hval = np.empty(n_arms, np.float64)
    harm = np.empty(n_arms, np.int64)
    for j in range(n_arms):
        hval[j] = _moss_index(sums[j], counts[j], horizon, n_arms)
        harm[j] = j
    _heapify(hval, harm, n_arms)
    for t in range(n_arms, horizon):
        a = harm[0]
        y = vals[a] + noise[t]
        arms_out[t] = a
        rewards_out[t] = y
        counts[a] += 1
        sums[a] += y
        hval[0] = _moss_index(sums[a], counts[a], horizon, n_arms)
        harm[0] = a
        _sift_down(hval, harm, n_arms, 0)


@_jit
def run_cab(
    horizon,
    lo,
    hi,
    emp_start,
    emp_end,
    emp_flat,
    pkind,
    pparams,
    u,
    noise,
    idx_out,
    arms_out,
    rewards_out,
    fx_out,
):
    """One CAB1.1 episode: MOSS over measures, reward = payoff(sampled arm) + noise.

    Measure j is the interval [lo[j], hi[j]) when emp_start[j] < 0, otherwise
    the empirical measure over emp_flat[emp_start[j]:emp_end[j]].  u[t] drives
    the arm draw at step t, noise[t] the reward perturbation.
    """
    n_meas = lo.shape[0]
    counts = np.zeros(n_meas, np.int64)
    sums = np.zeros(n_meas, np.float64)
    forced = horizon if horizon < n_meas else n_meas
    for t in range(forced):
        j = t
        uu = u[t]
        s = emp_start[j]
        if s >= 0:
            n_e = emp_end[j] - s
            k = int(uu * n_e)
            if k >= n_e:
                k = n_e - 1
            x = emp_flat[s + k]
        else:
            x = lo[j] + (hi[j] - lo[j]) * uu
        fx = payoff_value(pkind, pparams, x)
        y = fx + noise[t]
        idx_out[t] = j
        arms_out[t] = x
        rewards_out[t] = y
        fx_out[t] = fx
        counts[j] += 1
        sums[j] += y
    if horizon <= n_meas:
        return
    hval = np.empty(n_meas, np.float64)
    harm = np.empty(n_meas, np.int64)
    for j in range(n_meas):
        hval[j] = _moss_index(sums[j], counts[j], horizon, n_meas)
        harm[j] = j
    _heapify(hval, harm, n_meas)
    for t in range(n_meas, horizon):
        j = harm[0]
        uu = u[t]
        s = emp_start[j]
        if s >= 0:
            n_e = emp_end[j] - s
            k = int(uu * n_e)
            if k >= n_e:
                k = n_e - 1
            x = emp_flat[s + k]
        else:
            x = lo[j] + (hi[j] - lo[j]) * uu
        fx = payoff_value(pkind, pparams, x)
        y = fx + noise[t]
        idx_out[t] = j
        arms_out[t] = x
        rewards_out[t] = y
        fx_out[t] = fx
        counts[j] += 1
        sums[j] += y
        hval[0] = _moss_index(sums[j], counts[j], horizon, n_meas)
        harm[0] = j
        _sift_down(hval, harm, n_meas, 0)
