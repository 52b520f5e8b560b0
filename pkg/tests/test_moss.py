import math

import numpy as np
import pytest

from helpers import naive_moss_pulls

from cabandits import moss_bound, moss_init, moss_run, moss_select, moss_update
from cabandits.moss import moss_indices


def test_init_state():
    st = moss_init(3, 100)
    assert st.n_arms == 3 and st.horizon == 100 and st.t == 0
    assert np.all(st.counts == 0) and np.all(st.sums == 0.0)
    with pytest.raises(ValueError):
        moss_init(0, 10)
    with pytest.raises(ValueError):
        moss_init(2, 0)


def test_forced_rounds_then_index():
    st = moss_init(2, 100)
    assert moss_select(st) == 0
    moss_update(st, 0, 0.6)
    assert moss_select(st) == 1
    moss_update(st, 1, 0.4)
    # both pulled once: index = mean + sqrt(ln(100/2))
    bonus = math.sqrt(math.log(50.0))
    idx = moss_indices(st)
    assert abs(idx[0] - (0.6 + bonus)) < 1e-15
    assert abs(idx[1] - (0.4 + bonus)) < 1e-15
    assert moss_select(st) == 0


def test_index_formula_hand_values():
    st = moss_init(2, 100)
    for r in (0.7, 0.5, 0.6):
        moss_update(st, 0, r)
    moss_update(st, 1, 0.4)
    idx = moss_indices(st)
    assert abs(idx[0] - (0.6 + math.sqrt(math.log(100 / 6) / 3))) < 1e-15
    assert abs(idx[1] - (0.4 + math.sqrt(math.log(100 / 2) / 1))) < 1e-15
    # log clips at zero once an arm is pulled more than horizon/n_arms times
    st2 = moss_init(2, 4)
    for _ in range(3):
        moss_update(st2, 0, 0.5)
    moss_update(st2, 1, 0.1)
    assert moss_indices(st2)[0] == 0.5


def test_tie_breaks_to_lowest_arm():
    st = moss_init(3, 10)
    for arm in range(3):
        moss_update(st, arm, 0.5)
    assert moss_select(st) == 0


def test_update_and_select_errors():
    st = moss_init(2, 3)
    with pytest.raises(ValueError):
        moss_update(st, 2, 0.1)
    with pytest.raises(ValueError):
        moss_update(st, -1, 0.1)
    for arm in (0, 1, 0):
        moss_update(st, arm, 0.1)
    with pytest.raises(RuntimeError):
        moss_select(st)
    with pytest.raises(RuntimeError):
        moss_update(st, 0, 0.1)


def test_counts_always_sum_to_t():
    st = moss_init(4, 50)
    rng = np.random.default_rng(0)
    for t in range(50):
        arm = moss_select(st)
        moss_update(st, arm, float(rng.random()))
        assert int(st.counts.sum()) == t + 1 == st.t


def test_zero_noise_matches_naive_oracle():
    means = [0.9, 0.1]
    for horizon in (2, 3, 4, 10, 50):
        trace = moss_run(means, horizon, np.random.default_rng(0), noise_sd=0.0)
        assert trace.measure_idx.tolist() == naive_moss_pulls(means, horizon)
    # second-arm pulls: once up to horizon 3, twice at 4 and 10
    for horizon, expected in ((2, 0.8), (3, 0.8), (4, 1.6), (10, 1.6)):
        trace = moss_run(means, horizon, np.random.default_rng(0), noise_sd=0.0)
        assert abs(trace.total_regret - expected) < 1e-12


def test_zero_noise_matches_naive_oracle_many_arms():
    rng = np.random.default_rng(42)
    for k in (3, 7, 16):
        means = rng.random(k)
        trace = moss_run(means, 200, np.random.default_rng(0), noise_sd=0.0)
        assert trace.measure_idx.tolist() == naive_moss_pulls(means.tolist(), 200)


def test_single_arm_zero_regret():
    trace = moss_run([0.3], 100, np.random.default_rng(1))
    assert abs(trace.total_regret) < 1e-12
    assert np.all(trace.measure_idx == 0)


def test_horizon_below_arm_count():
    trace = moss_run([0.1, 0.2, 0.3, 0.4, 0.5], 3, np.random.default_rng(1))
    assert trace.measure_idx.tolist() == [0, 1, 2]


def test_run_determinism_and_seed_sensitivity():
    means = 0.5 - 0.05 * np.arange(10)
    a = moss_run(means, 2000, np.random.default_rng(5))
    b = moss_run(means, 2000, np.random.default_rng(5))
    c = moss_run(means, 2000, np.random.default_rng(6))
    assert np.array_equal(a.rewards, b.rewards)
    assert np.array_equal(a.measure_idx, b.measure_idx)
    assert not np.array_equal(a.rewards, c.rewards)


def test_pseudo_regret_is_pathwise_nonnegative_and_monotone():
    means = 0.5 - 0.05 * np.arange(10)
    trace = moss_run(means, 5000, np.random.default_rng(3))
    cum = trace.cum_regret
    assert cum[0] >= -1e-12
    assert np.all(np.diff(cum) >= -1e-12)


def test_regret_stays_under_distribution_free_bound():
    means = 0.5 - 0.05 * np.arange(10)
    finals = []
    for r in range(30):
        trace = moss_run(means, 10_000, np.random.default_rng(1000 + r))
        finals.append(trace.total_regret)
    finals = np.array(finals)
    mean = float(finals.mean())
    stderr = float(finals.std(ddof=1)) / math.sqrt(finals.size)
    assert mean + 2 * stderr <= moss_bound(10, 10_000)
    # and it should be doing far better than the bound on this easy instance
    assert mean < 0.25 * moss_bound(10, 10_000)


def test_bound_value_and_domain():
    assert abs(moss_bound(10, 10_000) - 18.0 * math.sqrt(1e5)) < 1e-9
    with pytest.raises(ValueError):
        moss_bound(10, 5)
