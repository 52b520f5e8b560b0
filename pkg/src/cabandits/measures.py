"""Probability measures over the arm space [0,1] and their payoff means.

Two kinds are supported: uniform measures on a subinterval, and empirical
measures over a finite list of stored arms.  Uniform means are computed by
composite Simpson quadrature with a fixed panel count; empirical means are
exact averages.
"""

import numpy as np

SIMPSON_PANELS = 4096


class ArmMeasure:
    """A sampling distribution over arms: uniform on [a,b) or empirical."""

    __slots__ = ("kind", "a", "b", "arms", "label")

    def __init__(self, kind, a=None, b=None, arms=None, label=None):
        if kind == "uniform":
            if a is None or b is None or not (0.0 <= a < b <= 1.0):
                raise ValueError(f"uniform measure needs 0 <= a < b <= 1, got [{a}, {b}]")
            self.a = float(a)
            self.b = float(b)
            self.arms = None
        elif kind == "empirical":
            arr = np.asarray(arms, dtype=np.float64)
            if arr.ndim != 1 or arr.size == 0:
                raise ValueError("empirical measure needs a nonempty 1-d arm array")
            if np.any(arr < 0.0) or np.any(arr > 1.0):
                raise ValueError("empirical arms must lie in [0, 1]")
            self.a = None
            self.b = None
            self.arms = arr
        else:
            raise ValueError(f"unknown measure kind {kind!r}")
        self.kind = kind
        if label is None:
            label = (
                f"U[{self.a:g},{self.b:g})"
                if kind == "uniform"
                else f"emp[{len(self.arms)}]"
            )
        self.label = label

    def __repr__(self):
        return f"ArmMeasure({self.label})"


def uniform_measure(a, b, label=None):
    return ArmMeasure("uniform", a=a, b=b, label=label)


def empirical_measure(arms, label=None):
    return ArmMeasure("empirical", arms=arms, label=label)


class MeasureSet:
    """An ordered collection of measures; position is the meta-arm index."""

    def __init__(self, measures):
        self.measures = list(measures)
        if not self.measures:
            raise ValueError("measure set cannot be empty")

    def __len__(self):
        return len(self.measures)

    def __getitem__(self, i):
        return self.measures[i]

    def __iter__(self):
        return iter(self.measures)

    def labels(self):
        return [m.label for m in self.measures]


def disc(n_cells):
    """Uniform discretization: n_cells uniform measures on [(i-1)/K, i/K)."""
    if n_cells < 1:
        raise ValueError("discretization needs at least one cell")
    return MeasureSet(
        [uniform_measure(i / n_cells, (i + 1) / n_cells) for i in range(n_cells)]
    )


def sample_measure(measure, rng):
    """Draw one arm: a + (b-a)*U for uniform, a uniformly stored arm otherwise."""
    u = rng.random()
    if measure.kind == "uniform":
        return measure.a + (measure.b - measure.a) * u
    k = min(int(u * measure.arms.size), measure.arms.size - 1)
    return float(measure.arms[k])


def measure_mean(measure, fn, panels=SIMPSON_PANELS):
    """Mean payoff under the measure.

    Exact average for empirical measures.  Composite Simpson for uniform
    measures, exact for polynomials up to degree 3 on each panel, so
    piecewise-linear payoffs with knots on panel boundaries integrate
    exactly.
    """
    if measure.kind == "empirical":
        return float(np.mean(fn(measure.arms)))
    xs = np.linspace(measure.a, measure.b, panels + 1)
    ys = fn(xs)
    w = np.ones(panels + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    # mean = integral / width; the width cancels against the panel step
    return float(np.dot(w, ys) / (3.0 * panels))


def encode_measure_set(measures):
    """Pack a MeasureSet into the flat arrays the jitted episode loop takes.

    Returns (lo, hi, emp_start, emp_end, emp_flat); emp_start[j] < 0 marks a
    uniform measure.
    """
    n = len(measures)
    lo = np.zeros(n)
    hi = np.zeros(n)
    emp_start = np.full(n, -1, dtype=np.int64)
    emp_end = np.full(n, -1, dtype=np.int64)
    chunks = []
    pos = 0
    for j, m in enumerate(measures):
        if m.kind == "uniform":
            lo[j] = m.a
            hi[j] = m.b
        else:
            emp_start[j] = pos
            pos += m.arms.size
            emp_end[j] = pos
            chunks.append(m.arms)
    emp_flat = np.concatenate(chunks) if chunks else np.zeros(0)
    return lo, hi, emp_start, emp_end, emp_flat
