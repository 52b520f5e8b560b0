"""The four figure kinds, each a pure function of one CSV file.

Rendering is deterministic: Agg only, fixed geometry, no clock and no RNG,
pinned svg hash salt, and the svg Date field stripped, so re-rendering the
same CSV gives byte-identical output. Mean curves are drawn solid with
+/- one standard deviation dotted alongside.
"""

import os
import statistics
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "regret-plots"

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .schemas import SchemaError, read_table

KINDS = ("rates", "regimes", "appendix-e", "hypotheses")


@dataclass
class FigureSpec:
    kind: str
    src: str
    out: str
    title: str = None
    xlabel: str = None
    ylabel: str = None


def render(spec):
    """Build the spec.kind figure from spec.src and write it to spec.out.

    Returns the matplotlib figure so callers can inspect the plotted line
    data. All validation happens before anything is written: a bad spec or
    a schema mismatch leaves no partial or empty image behind.
    """
    if spec.kind not in KINDS:
        raise ValueError(f"unknown figure kind '{spec.kind}', expected one of: {', '.join(KINDS)}")
    ext = os.path.splitext(spec.out)[1].lower()
    if ext not in (".png", ".svg"):
        raise ValueError(f"unsupported output extension '{ext}', use .png or .svg")
    tab = read_table(spec.src, spec.kind)
    fig = _BUILDERS[spec.kind](tab, spec)
    if ext == ".svg":
        fig.savefig(spec.out, format="svg", metadata={"Date": None})
    else:
        fig.savefig(spec.out, format="png")
    return fig


def _new_fig():
    fig = Figure(figsize=(6.4, 4.2), dpi=100)
    FigureCanvasAgg(fig)
    return fig


def _groups(col):
    """Distinct values of col in first-appearance order, with row indexes."""
    order, idx = [], {}
    for j, v in enumerate(col):
        if v not in idx:
            idx[v] = []
            order.append(v)
        idx[v].append(j)
    return [(v, idx[v]) for v in order]


def _finish(ax, spec, xlabel, ylabel, legend=True):
    ax.set_xlabel(spec.xlabel or xlabel)
    ax.set_ylabel(spec.ylabel or ylabel)
    if spec.title:
        ax.set_title(spec.title)
    if legend:
        ax.legend(fontsize="small")
    ax.grid(True, alpha=0.3)


def _build_rates(tab, spec):
    # one curve per m plus the known-alpha reference, exponents live in [1/2, 1]
    fig = _new_fig()
    ax = fig.subplots()
    groups = _groups(tab["m"])
    for m, idx in groups:
        ax.plot(
            [tab["alpha"][j] for j in idx],
            [tab["theta"][j] for j in idx],
            "-",
            label=f"m = {m:g}",
        )
    _, idx0 = groups[0]
    ax.plot(
        [tab["alpha"][j] for j in idx0],
        [tab["minimax"][j] for j in idx0],
        "--",
        color="black",
        label="minimax (alpha known)",
    )
    ax.set_xscale("log")
    ax.set_ylim(0.5, 1.0)
    _finish(ax, spec, "alpha", "regret exponent theta")
    return fig


def _build_hypotheses(tab, spec):
    fig = _new_fig()
    ax = fig.subplots()
    groups = _groups(tab["i"])
    for i, idx in groups:
        xs = [tab["x"][j] for j in idx]
        ys = [tab["phi"][j] for j in idx]
        if i == 0:
            # the smooth member every needle is played against
            ax.plot(xs, ys, "-", color="black", linewidth=2.0, label="phi_0")
        else:
            ax.plot(xs, ys, "-", linewidth=1.0, label=f"phi_{i}")
    _finish(ax, spec, "x", "payoff", legend=len(groups) <= 8)
    return fig


def _build_appendix_e(tab, spec):
    bad = [a for a in tab["algo"] if a not in ("medzo", "cab1")]
    if bad:
        raise SchemaError(f"{spec.src}: unknown algo '{bad[0]}' in column 'algo'")
    medzo = [j for j, a in enumerate(tab["algo"]) if a == "medzo"]
    cab1 = [j for j, a in enumerate(tab["algo"]) if a == "cab1"]
    if len(medzo) != 1:
        raise SchemaError(
            f"{spec.src}: expected exactly one medzo row in column 'algo', found {len(medzo)}"
        )
    if not cab1:
        raise SchemaError(f"{spec.src}: no cab1 rows in column 'algo'")
    for j in cab1:
        if tab["alpha"][j] is None:
            raise SchemaError(f"{spec.src}: empty value in column 'alpha' on a cab1 row")
    order = sorted(cab1, key=lambda j: tab["alpha"][j])
    alphas = [tab["alpha"][j] for j in order]
    means = [tab["final_mean"][j] for j in order]
    stds = [tab["final_std"][j] for j in order]

    fig = _new_fig()
    ax = fig.subplots()
    mj = medzo[0]
    mm, ms = tab["final_mean"][mj], tab["final_std"][mj]
    span = [alphas[0], alphas[-1]]
    ax.plot(span, [mm, mm], "-", color="tab:red", label="MeDZO (B = sqrt(T))")
    ax.plot(span, [mm - ms, mm - ms], ":", color="tab:red")
    ax.plot(span, [mm + ms, mm + ms], ":", color="tab:red")
    ax.plot(alphas, means, "-o", color="tab:blue", label="CAB1.1 tuned to alpha")
    ax.plot(alphas, [v - s for v, s in zip(means, stds)], ":", color="tab:blue")
    ax.plot(alphas, [v + s for v, s in zip(means, stds)], ":", color="tab:blue")
    ax.set_xscale("log")
    _finish(ax, spec, "assumed alpha", "final cumulative regret")
    return fig


def _build_regimes(tab, spec):
    # all runs of one experiment share the deterministic regime schedule
    runs = _groups(tab["run_id"])
    sched = None
    per_run = []
    for rid, idx in runs:
        idx = sorted(idx, key=lambda j: tab["regime"][j])
        s = [(tab["regime"][j], tab["cells"][j], tab["length"][j]) for j in idx]
        if sched is None:
            sched = s
        elif s != sched:
            raise SchemaError(
                f"{spec.src}: run {rid} disagrees with run {runs[0][0]} "
                f"in columns 'regime'/'cells'/'length'"
            )
        per_run.append([tab["nu_mean"][j] for j in idx])

    n = len(per_run)
    means = [statistics.fmean(vals[k] for vals in per_run) for k in range(len(sched))]
    stds = [
        statistics.stdev(vals[k] for vals in per_run) if n > 1 else 0.0
        for k in range(len(sched))
    ]
    bounds = [0]
    for _, _, length in sched:
        bounds.append(bounds[-1] + length)

    def steps(vals):
        # explicit step polyline: (t_{k-1}, v_k), (t_k, v_k) per regime
        xs, ys = [], []
        for k, v in enumerate(vals):
            xs += [bounds[k], bounds[k + 1]]
            ys += [v, v]
        return xs, ys

    fig = _new_fig()
    ax = fig.subplots()
    ax.plot(*steps(means), "-", color="tab:blue", label=f"mean over {n} runs")
    ax.plot(*steps([m - s for m, s in zip(means, stds)]), ":", color="tab:blue")
    ax.plot(*steps([m + s for m, s in zip(means, stds)]), ":", color="tab:blue")
    for k, (_, cells, _) in enumerate(sched):
        ax.annotate(
            f"K={cells}",
            ((bounds[k] + bounds[k + 1]) / 2, means[k]),
            textcoords="offset points",
            xytext=(0, 5),
            ha="center",
            fontsize="x-small",
        )
    _finish(ax, spec, "t", "mean payoff of the played measure")
    return fig


_BUILDERS = {
    "rates": _build_rates,
    "regimes": _build_regimes,
    "appendix-e": _build_appendix_e,
    "hypotheses": _build_hypotheses,
}
