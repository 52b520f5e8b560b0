"""Mean payoff functions on [0,1], noise models, and bandit problem bundles.

Every payoff function is deterministic, vectorized over numpy arrays, and
clamped to [0, 1].  Clamping is defensive for the named test functions (it
should never fire for them) and definitional for the synthetic peak family;
each function counts how many evaluations were actually clamped.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

# resolution of the brute-force argmax scan used when no closed form is known
GRID_ORACLE_POINTS = 2_000_001


@dataclass(frozen=True)
class HolderParams:
    """Smoothness class parameters: |f(xstar) - f(x)| <= L * |xstar - x|**alpha."""

    L: float
    alpha: float

    def __post_init__(self):
        if not (self.L > 0):
            raise ValueError("Holder constant L must be positive")
        if not (self.alpha > 0):
            raise ValueError("Holder exponent alpha must be positive")


class MeanPayoffFunction:
    """Deterministic mean payoff x -> [0,1].

    kind/params mirror the scalar kernel encoding in _kernels.payoff_value so
    the same function can be evaluated inside jitted loops.  closed_form_max
    is an optional (max_value, argmax) pair for families where the peak is
    known exactly.
    """

    def __init__(self, kind, params, label, closed_form_max=None):
        self.kind = int(kind)
        self.params = np.asarray(params, dtype=np.float64)
        self.label = label
        self.closed_form_max = closed_form_max
        self.clamp_events = 0

    def __repr__(self):
        return f"MeanPayoffFunction({self.label!r})"

    def _raw(self, x):
        p = self.params
        if self.kind == _kernels.PAYOFF_SINES:
            return 0.5 * np.sin(13.0 * x) * np.sin(27.0 * x) + 0.5
        if self.kind == _kernels.PAYOFF_TWO_BRANCH:
            return np.maximum(3.6 * x * (1.0 - x), 1.0 - np.abs(x - 0.05) / 0.05)
        if self.kind == _kernels.PAYOFF_GARLAND:
            return x * (1.0 - x) * (4.0 - np.sqrt(np.abs(np.sin(60.0 * x))))
        if self.kind == _kernels.PAYOFF_PEAK:
            L, alpha, xstar, top = p
            return top - L * np.abs(x - xstar) ** alpha
        if self.kind == _kernels.PAYOFF_PIECEWISE:
            n = int(p[0])
            return np.interp(x, p[1 : 1 + n], p[1 + n : 1 + 2 * n])
        if self.kind == _kernels.PAYOFF_HYPOTHESIS:
            top, delta, n_cells, L, alpha, ell, gamma, i = p
            floor = top - delta
            out = np.full_like(x, floor, dtype=np.float64)
            smooth = x >= 0.5
            out[smooth] = np.maximum(
                floor, top - 0.5 * delta - ell * np.abs(x[smooth] - 0.75) ** gamma
            )
            i = int(i)
            if i >= 1:
                w = 0.5 / n_cells
                cell = (~smooth) & (x >= (i - 1) * w) & (x <= i * w)
                xi = (i - 0.5) * w
                out[cell] = np.maximum(floor, top - L * np.abs(x[cell] - xi) ** alpha)
            return out
        return np.full_like(x, p[0], dtype=np.float64)

    def __call__(self, x):
        scalar = np.isscalar(x) or getattr(x, "ndim", 1) == 0
        xa = np.atleast_1d(np.asarray(x, dtype=np.float64))
        raw = self._raw(xa)
        n_clamped = int(np.count_nonzero((raw < 0.0) | (raw > 1.0)))
        if n_clamped:
            self.clamp_events += n_clamped
            raw = np.clip(raw, 0.0, 1.0)
        return float(raw[0]) if scalar else raw


def make_test_function(spec):
    """Build a payoff function from its CLI name.

    Accepts "f", "g", "garland", or "peak:L,alpha,xstar,M".
    """
    if spec == "f":
        return MeanPayoffFunction(_kernels.PAYOFF_SINES, [], "f")
    if spec == "g":
        return MeanPayoffFunction(
            _kernels.PAYOFF_TWO_BRANCH, [], "g", closed_form_max=(1.0, 0.05)
        )
    if spec == "garland":
        return MeanPayoffFunction(_kernels.PAYOFF_GARLAND, [], "garland")
    if spec.startswith("peak:"):
        parts = spec[len("peak:") :].split(",")
        if len(parts) != 4:
            raise ValueError(f"peak spec needs L,alpha,xstar,M: {spec!r}")
        L, alpha, xstar, top = (float(s) for s in parts)
        return single_peak(L, alpha, xstar, top)
    raise ValueError(f"unknown payoff function {spec!r}")


def single_peak(L, alpha, xstar, top=1.0):
    """x -> clip(M - L*|x - xstar|**alpha, 0, 1), peak of height M at xstar."""
    if not (L > 0 and alpha > 0):
        raise ValueError("peak needs L > 0 and alpha > 0")
    if not (0.0 <= xstar <= 1.0):
        raise ValueError("peak location must lie in [0, 1]")
    if not (0.0 <= top <= 1.0):
        raise ValueError("peak height must lie in [0, 1]")
    return MeanPayoffFunction(
        _kernels.PAYOFF_PEAK,
        [L, alpha, xstar, top],
        f"peak:{L:g},{alpha:g},{xstar:g},{top:g}",
        closed_form_max=(top, xstar),
    )


def constant_function(c):
    if not (0.0 <= c <= 1.0):
        raise ValueError("constant payoff must lie in [0, 1]")
    return MeanPayoffFunction(
        _kernels.PAYOFF_CONSTANT, [c], f"const:{c:g}", closed_form_max=(c, 0.0)
    )


def piecewise_linear(knots, values):
    """Piecewise-linear payoff through (knots, values); knots must span [0, 1]."""
    knots = np.asarray(knots, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if knots.ndim != 1 or knots.shape != values.shape or knots.size < 2:
        raise ValueError("need matching 1-d knot and value arrays, length >= 2")
    if knots[0] != 0.0 or knots[-1] != 1.0 or np.any(np.diff(knots) <= 0):
        raise ValueError("knots must increase strictly from 0 to 1")
    if np.any(values < 0.0) or np.any(values > 1.0):
        raise ValueError("values must lie in [0, 1]")
    params = np.concatenate(([knots.size], knots, values))
    return MeanPayoffFunction(_kernels.PAYOFF_PIECEWISE, params, "piecewise")


def global_max(fn, n_points=GRID_ORACLE_POINTS):
    """(max value, argmax) of fn; ties break to the smallest x.

    Uses the closed form when the function carries one, otherwise a dense
    grid scan, so grid results are exact only up to the grid resolution.
    """
    if fn.closed_form_max is not None:
        top, xstar = fn.closed_form_max
        return float(top), float(xstar)
    xs = np.linspace(0.0, 1.0, n_points)
    vals = fn(xs)
    j = int(np.argmax(vals))
    return float(vals[j]), float(xs[j])


@dataclass(frozen=True)
class HolderCheckResult:
    ok: bool
    worst_ratio: float


def holder_check(fn, params, grid_size=10_000, tol=1e-12):
    """Grid test of fn against the one-sided smoothness cone at its peak.

    Checks f(xstar) - f(x) <= L * |xstar - x|**alpha + tol at every grid
    point and reports the largest observed ratio.  xstar and f(xstar) come
    from the closed form when available; a grid argmax of a sharp peak can
    sit slightly off the true peak and spuriously pierce the cone.
    """
    xs = np.linspace(0.0, 1.0, grid_size)
    vals = fn(xs)
    if fn.closed_form_max is not None:
        top, xstar = (float(v) for v in fn.closed_form_max)
    else:
        j = int(np.argmax(vals))
        top, xstar = float(vals[j]), float(xs[j])
    gaps = top - vals
    dist = np.abs(xstar - xs) ** params.alpha
    keep = dist > 0.0
    ratios = gaps[keep] / dist[keep]
    worst = float(np.max(ratios)) if ratios.size else 0.0
    ok = bool(np.all(gaps[keep] <= params.L * dist[keep] + tol))
    return HolderCheckResult(ok=ok, worst_ratio=worst)


class NoiseModel:
    """Additive reward noise; the standard model is N(0, 1/4)."""

    def __init__(self, kind="gaussian", sd=0.5):
        if kind not in ("gaussian", "none"):
            raise ValueError(f"unknown noise kind {kind!r}")
        if sd < 0:
            raise ValueError("noise sd must be nonnegative")
        self.kind = kind
        self.sd = float(sd) if kind == "gaussian" else 0.0

    def draw(self, rng, n):
        if self.kind == "none" or self.sd == 0.0:
            return np.zeros(n)
        return rng.normal(0.0, self.sd, n)

    def sample(self, rng):
        if self.kind == "none" or self.sd == 0.0:
            return 0.0
        return float(rng.normal(0.0, self.sd))


@dataclass
class BanditProblem:
    """A payoff function with its noise model and precomputed peak."""

    payoff: MeanPayoffFunction
    noise: NoiseModel
    max_value: float
    argmax: float

    @classmethod
    def make(cls, payoff, noise=None):
        if noise is None:
            noise = NoiseModel()
        top, xstar = global_max(payoff)
        return cls(payoff=payoff, noise=noise, max_value=top, argmax=xstar)


def sample_reward(problem, x, rng):
    """One reward draw at arm x: mean payoff plus noise, not clipped."""
    if not (0.0 <= x <= 1.0):
        raise ValueError(f"arm {x} outside [0, 1]")
    return problem.payoff(x) + problem.noise.sample(rng)
