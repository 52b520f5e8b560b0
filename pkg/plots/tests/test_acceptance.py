"""Headline check for the plot component, one pass/fail line.

12. All four figure kinds render from real harness CSVs (rate curves from
    the rates command, hypothesis family from the lowerbound command, regime
    staircase and tuned-comparison summary from the benchmark suite), in both
    png and svg, and the rate-curve figure reproduces the CSV sample points
    exactly.
"""

import time

from regret_plots import FigureSpec, render

from conftest import read_csv


def test_criterion_12_plot_component(data_dir, tmp_path):
    t0 = time.perf_counter()
    srcs = {
        "rates": data_dir / "rates" / "rates.csv",
        "hypotheses": data_dir / "family" / "family.csv",
        "regimes": data_dir / "medzo" / "regimes.csv",
        "appendix-e": data_dir / "suite" / "summary_f.csv",
    }
    figs = {}
    for kind, src in srcs.items():
        for ext in (".png", ".svg"):
            out = tmp_path / f"{kind}{ext}"
            figs[kind] = render(FigureSpec(kind=kind, src=str(src), out=str(out)))
            assert out.exists() and out.stat().st_size > 0, f"{kind}{ext} not written"

    # every rate curve must reproduce its CSV samples exactly
    _, rows = read_csv(srcs["rates"])
    ax = figs["rates"].axes[0]
    mkeys = []
    for r in rows:
        if r[0] not in mkeys:
            mkeys.append(r[0])
    assert len(ax.lines) == len(mkeys) + 1
    points = 0
    for line, mkey in zip(ax.lines, mkeys):
        sub = [r for r in rows if r[0] == mkey]
        ok_x = [float(v) for v in line.get_xdata()] == [float(r[1]) for r in sub]
        ok_y = [float(v) for v in line.get_ydata()] == [float(r[2]) for r in sub]
        assert ok_x and ok_y, f"curve {mkey} deviates from the CSV samples"
        points += len(sub)

    elapsed = time.perf_counter() - t0
    line = (
        f"[PASS] 12 plot-component: 4 kinds x 2 formats rendered, "
        f"{len(mkeys)} rate curves x {points // len(mkeys)} points exact [{elapsed:.2f}s]"
    )
    print(line)
