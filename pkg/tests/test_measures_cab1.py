import math
import warnings

import numpy as np
import pytest

from helpers import naive_moss_pulls, piecewise_exact_mean, random_dyadic_piecewise

from cabandits import (
    BanditProblem,
    HolderParams,
    NoiseModel,
    cab1_bound,
    cab11_nonadaptive,
    cab11_run,
    constant_function,
    disc,
    empirical_measure,
    kstar,
    make_test_function,
    measure_mean,
    piecewise_linear,
    sample_measure,
    single_peak,
    uniform_measure,
)
from cabandits.measures import MeasureSet, encode_measure_set

F_MEAN_ON_01 = 0.513032459812982  # 1e7-point Riemann value for the half-sine env


def test_measure_validation():
    with pytest.raises(ValueError):
        uniform_measure(0.5, 0.5)
    with pytest.raises(ValueError):
        uniform_measure(0.6, 0.5)
    with pytest.raises(ValueError):
        uniform_measure(-0.1, 0.5)
    with pytest.raises(ValueError):
        uniform_measure(0.5, 1.1)
    with pytest.raises(ValueError):
        empirical_measure([])
    with pytest.raises(ValueError):
        empirical_measure([0.2, 1.3])
    with pytest.raises(ValueError):
        MeasureSet([])
    m = uniform_measure(0.25, 0.5)
    assert m.kind == "uniform" and m.a == 0.25 and m.b == 0.5
    e = empirical_measure([0.1, 0.9])
    assert e.kind == "empirical" and e.arms.tolist() == [0.1, 0.9]


def test_disc_structure():
    ms = disc(4)
    assert len(ms) == 4
    for i, m in enumerate(ms):
        assert m.kind == "uniform"
        assert m.a == i / 4 and m.b == (i + 1) / 4
    assert [m.label for m in ms] == ms.labels()
    with pytest.raises(ValueError):
        disc(0)


def test_sampling_ranges_and_stats():
    rng = np.random.default_rng(7)
    m = uniform_measure(0.25, 0.5)
    xs = np.array([sample_measure(m, rng) for _ in range(20_000)])
    assert np.all((xs >= 0.25) & (xs < 0.5))
    assert abs(xs.mean() - 0.375) < 0.002
    e = empirical_measure([0.1, 0.9])
    ys = np.array([sample_measure(e, rng) for _ in range(20_000)])
    assert set(np.unique(ys)) == {0.1, 0.9}
    assert abs((ys == 0.1).mean() - 0.5) < 0.02


def test_measure_mean_exact_cases():
    ident = piecewise_linear([0.0, 1.0], [0.0, 1.0])
    assert abs(measure_mean(uniform_measure(0.0, 0.5), ident) - 0.25) < 1e-15
    sq = lambda x: np.asarray(x) ** 2
    assert abs(measure_mean(empirical_measure([0.1, 0.3]), sq) - 0.05) < 1e-15
    const = constant_function(0.7)
    assert measure_mean(uniform_measure(0.2, 0.9), const) == pytest.approx(0.7, abs=1e-14)


def test_measure_mean_against_riemann_oracle():
    f = make_test_function("f")
    # frozen high-resolution Riemann value
    got = measure_mean(uniform_measure(0.0, 1.0), f)
    assert abs(got - F_MEAN_ON_01) < 1e-6
    # and an in-test midpoint-rule oracle at a different resolution
    xs = (np.arange(100_000) + 0.5) / 100_000
    assert abs(got - float(f(xs).mean())) < 1e-9


def test_measure_mean_piecewise_quadrature():
    # Simpson with 4096 panels is exact once every knot lands on a panel
    # boundary, which happens iff the interval width is a power of two
    # over the knot denominator; otherwise the kink inside a panel costs
    # O(h^2) ~ 1e-8
    rng = np.random.default_rng(11)
    for _ in range(10):
        knots, values = random_dyadic_piecewise(rng)
        fn = piecewise_linear(knots, values)
        for a, b in ((0.0, 1.0), (0.25, 0.5), (0.375, 0.875)):
            exact = piecewise_exact_mean(knots, values, a, b)
            assert abs(measure_mean(uniform_measure(a, b), fn) - exact) < 1e-13
        a, b = sorted(rng.choice(np.arange(65) / 64, size=2, replace=False))
        exact = piecewise_exact_mean(knots, values, a, b)
        assert abs(measure_mean(uniform_measure(a, b), fn) - exact) < 2e-7


def test_kstar_examples():
    assert kstar(HolderParams(1.0, 1.0), 32768) == 32
    assert kstar(HolderParams(2.0, 0.5), 10_000) == 200
    assert kstar(HolderParams(1e6, 0.1), 100) == 100
    # cap at horizon
    assert kstar(HolderParams(1000.0, 0.1), 50) == 50
    with pytest.raises(ValueError):
        kstar(HolderParams(1.0, 1.0), 0)


def test_kstar_integer_guard():
    # these land on exact integers; the guard keeps ceil from bumping
    # them up on float dust
    assert kstar(HolderParams(1.0, 1.0), 32768) == 32
    assert kstar(HolderParams(8.0, 1.0), 64) == 16


def test_kstar_warns_for_tiny_L():
    with pytest.warns(UserWarning):
        kstar(HolderParams(0.01, 1.0), 100)
    with pytest.warns(UserWarning):
        cab1_bound(HolderParams(0.01, 1.0), 100)


def test_cab1_bound_values():
    assert abs(cab1_bound(HolderParams(1.0, 1.0), 1000) - 28.0 * 1000 ** (2 / 3)) < 1e-9
    assert abs(cab1_bound(HolderParams(1.0, 0.5), 4096) - 28.0 * 4096 ** 0.75) < 1e-9


def test_single_measure_expected_regret():
    f = single_peak(1.0, 1.0, 0.3, top=0.8)
    problem = BanditProblem.make(f)
    ms = MeasureSet([uniform_measure(0.0, 1.0)])
    trace = cab11_run(10, ms, problem, rng=None, expected=True)
    mean = measure_mean(ms[0], problem.payoff)
    assert trace.total_regret == pytest.approx(10 * (problem.max_value - mean), abs=1e-12)


def test_point_mass_at_argmax_has_zero_regret():
    f = single_peak(1.0, 1.0, 0.3, top=0.8)
    problem = BanditProblem.make(f)
    ms = MeasureSet([empirical_measure([0.3])])
    trace = cab11_run(25, ms, problem, rng=None, expected=True)
    assert abs(trace.total_regret) < 1e-12
    assert np.all(trace.arms == 0.3)


def test_expected_mode_matches_naive_moss():
    f = single_peak(1.0, 1.0, 0.3, top=0.8)
    problem = BanditProblem.make(f)
    ms = disc(5)
    vals = [measure_mean(m, problem.payoff) for m in ms]
    trace = cab11_run(60, ms, problem, rng=None, expected=True)
    assert trace.measure_idx.tolist() == naive_moss_pulls(vals, 60)


def test_expected_mode_permutation_equivariance():
    # relabeling the measures permutes the pull sequence but not the values
    f = single_peak(1.0, 1.0, 0.3, top=0.8)
    problem = BanditProblem.make(f)
    base = list(disc(5))
    perm = [3, 0, 4, 1, 2]
    t1 = cab11_run(60, MeasureSet(base), problem, rng=None, expected=True)
    t2 = cab11_run(60, MeasureSet([base[j] for j in perm]), problem, rng=None, expected=True)
    assert sorted(t1.rewards.tolist()) == pytest.approx(sorted(t2.rewards.tolist()))
    assert t1.total_regret == pytest.approx(t2.total_regret, abs=1e-12)


def test_regret_decomposition_identity():
    # T*(M - best measure mean) + sum(best - pulled) == sum(M - pulled)
    rng = np.random.default_rng(3)
    knots, values = random_dyadic_piecewise(rng)
    problem = BanditProblem.make(piecewise_linear(knots, values))
    ms = disc(8)
    vals = np.array([measure_mean(m, problem.payoff) for m in ms])
    best = vals.max()
    trace = cab11_run(200, ms, problem, rng=np.random.default_rng(5))
    pulled = vals[trace.measure_idx]
    lhs = 200 * (problem.max_value - best) + float(np.sum(best - pulled))
    rhs = float(np.sum(problem.max_value - pulled))
    assert abs(lhs - rhs) < 1e-9


def test_sampled_arms_stay_inside_their_measures():
    f = single_peak(1.0, 1.0, 0.3, top=0.8)
    problem = BanditProblem.make(f)
    ms = disc(4)
    trace = cab11_run(400, ms, problem, rng=np.random.default_rng(2))
    for j, m in enumerate(ms):
        picked = trace.arms[trace.measure_idx == j]
        assert np.all((picked >= m.a) & (picked < m.b))


def test_mixed_measure_kinds_round_trip():
    ms = MeasureSet(
        [uniform_measure(0.0, 0.5), empirical_measure([0.6, 0.7]), uniform_measure(0.5, 1.0)]
    )
    lo, hi, emp_start, emp_end, emp_flat = encode_measure_set(ms)
    assert emp_start.tolist() == [-1, 0, -1]
    assert emp_end.tolist() == [-1, 2, -1]
    assert emp_flat.tolist() == [0.6, 0.7]
    assert lo.tolist() == [0.0, 0.0, 0.5] and hi.tolist() == [0.5, 0.0, 1.0]
    f = single_peak(1.0, 1.0, 0.65, top=0.9)
    problem = BanditProblem.make(f)
    trace = cab11_run(300, ms, problem, rng=np.random.default_rng(9))
    picked = trace.arms[trace.measure_idx == 1]
    assert picked.size > 0 and set(np.unique(picked)) <= {0.6, 0.7}


def test_cab11_determinism_and_seed_sensitivity():
    f = single_peak(1.0, 0.5, 0.3, top=0.8)
    problem = BanditProblem.make(f)
    k = kstar(HolderParams(1.0, 0.5), 2000)
    a = cab11_run(2000, disc(k), problem, rng=np.random.default_rng(12))
    b = cab11_run(2000, disc(k), problem, rng=np.random.default_rng(12))
    c = cab11_run(2000, disc(k), problem, rng=np.random.default_rng(13))
    assert np.array_equal(a.arms, b.arms) and np.array_equal(a.rewards, b.rewards)
    assert not np.array_equal(a.arms, c.arms)


def test_cum_regret_monotone_nonnegative():
    f = single_peak(1.0, 1.0, 0.3, top=0.8)
    problem = BanditProblem.make(f)
    trace = cab11_nonadaptive(4096, HolderParams(1.0, 1.0), problem, np.random.default_rng(1))
    cum = trace.cum_regret
    assert cum[-1] == pytest.approx(trace.total_regret)
    assert np.all(np.diff(cum) >= -1e-12)
    assert cum[0] >= -1e-12
    assert len(trace) == 4096


def test_nonadaptive_hits_tuned_bound_on_average():
    params = HolderParams(1.0, 1.0)
    f = single_peak(1.0, 1.0, 0.3, top=0.8)
    problem = BanditProblem.make(f)
    finals = []
    for r in range(20):
        trace = cab11_nonadaptive(4096, params, problem, np.random.default_rng(100 + r))
        finals.append(trace.total_regret)
    finals = np.array(finals)
    mean = float(finals.mean())
    stderr = float(finals.std(ddof=1)) / math.sqrt(finals.size)
    assert mean + 2 * stderr <= cab1_bound(params, 4096)


def test_expected_mode_ignores_noise_model():
    f = single_peak(1.0, 1.0, 0.3, top=0.8)
    noisy = BanditProblem.make(f, noise=NoiseModel("gaussian", sd=0.5))
    quiet = BanditProblem.make(f, noise=NoiseModel("none"))
    t1 = cab11_run(50, disc(4), noisy, rng=None, expected=True)
    t2 = cab11_run(50, disc(4), quiet, rng=None, expected=True)
    assert np.array_equal(t1.rewards, t2.rewards)
    assert np.array_equal(t1.measure_idx, t2.measure_idx)


def test_cab11_rejects_bad_horizon():
    f = constant_function(0.5)
    problem = BanditProblem.make(f)
    with pytest.raises(ValueError):
        cab11_run(0, disc(2), problem, rng=np.random.default_rng(0))
