import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fastodt.split_stats import (
    AdaptiveHistogram,
    NodeStats,
    compute_best_split,
    gate,
    hoeffding_epsilon,
    should_split,
)
from oracles import brute_force_split, epsilon_closed_form, per_feature_best_gains


def fill(X, y, max_bins=64):
    ns = NodeStats(len(X[0]), max_bins)
    for row, t in zip(X, y):
        ns.update(list(map(float, row)), float(t))
    return ns


# -- histogram -------------------------------------------------------------


def test_first_insertion_creates_one_bin():
    h = AdaptiveHistogram(3)
    h.insert(1.0, 2.0)
    assert h.centroids == [1.0]
    assert h.counts == [1]
    assert h.sums == [2.0]


def test_overflow_merges_closest_pair():
    h = AdaptiveHistogram(3)
    for v in (1.0, 2.0, 10.0):
        h.insert(v, 0.0)
    h.insert(2.1, 1.0)
    assert len(h) == 3
    assert h.centroids[0] == 1.0
    assert h.centroids[1] == pytest.approx(2.05)
    assert h.centroids[2] == 10.0
    assert h.counts == [1, 2, 1]
    assert h.sums[1] == 1.0


def test_equal_values_accumulate():
    h = AdaptiveHistogram(8)
    h.insert(3.0, 1.0)
    h.insert(3.0, 2.0)
    assert len(h) == 1
    assert h.counts == [2]
    assert h.sums == [3.0]
    assert h.sqsums == [5.0]


@given(
    st.lists(
        st.tuples(
            st.floats(-100, 100, allow_nan=False),
            st.floats(-100, 100, allow_nan=False),
        ),
        min_size=1,
        max_size=300,
    ),
    st.integers(2, 16),
)
def test_histogram_invariants(obs, max_bins):
    h = AdaptiveHistogram(max_bins)
    for v, t in obs:
        h.insert(v, t)
        assert len(h) <= max_bins
    assert all(a < b for a, b in zip(h.centroids, h.centroids[1:]))
    assert h.total_count == len(obs)
    ts = [t for _, t in obs]
    assert math.fsum(h.sums) == pytest.approx(math.fsum(ts), abs=1e-6)
    assert math.fsum(h.sqsums) == pytest.approx(math.fsum(t * t for t in ts), rel=1e-9, abs=1e-6)
    for b in h.bins:
        assert b.count >= 1
        assert b.target_sum_sq >= b.target_sum**2 / b.count - 1e-6
    assert h._gaps == pytest.approx([b - a for a, b in zip(h.centroids, h.centroids[1:])])


def test_histogram_roundtrip():
    h = AdaptiveHistogram(4)
    for v in np.random.default_rng(0).random(40):
        h.insert(float(v), float(v) * 2)
    g = AdaptiveHistogram.from_dict(h.to_dict())
    assert g.to_dict() == h.to_dict()
    assert g._gaps == h._gaps


# -- Hoeffding bound --------------------------------------------------------


def test_epsilon_examples():
    assert hoeffding_epsilon(1, 0.05, 1000) == pytest.approx(0.038702275602049495, rel=1e-12)
    assert hoeffding_epsilon(1, 0.05, 4000) == pytest.approx(0.019351137801024747, rel=1e-12)
    assert hoeffding_epsilon(0, 0.3, 17) == 0.0


@pytest.mark.parametrize("delta, n", [(0.0, 10), (1.0, 10), (-0.1, 10), (0.5, 0)])
def test_epsilon_domain_errors(delta, n):
    with pytest.raises(ValueError):
        hoeffding_epsilon(1.0, delta, n)


@given(st.floats(0.01, 100), st.floats(1e-9, 0.99), st.integers(1, 10**7))
def test_epsilon_matches_closed_form(R, delta, n):
    assert hoeffding_epsilon(R, delta, n) == pytest.approx(epsilon_closed_form(R, delta, n), rel=1e-12)


@given(st.floats(0.01, 100), st.floats(1e-9, 0.5), st.integers(1, 10**6))
def test_epsilon_monotonicity(R, delta, n):
    e = hoeffding_epsilon(R, delta, n)
    assert hoeffding_epsilon(R, delta, n + 1) < e
    assert hoeffding_epsilon(R * 1.5, delta, n) > e
    assert hoeffding_epsilon(R, delta / 2, n) > e


# -- best split -------------------------------------------------------------


def test_two_cluster_split():
    x = np.r_[np.linspace(-1, -0.1, 50), np.linspace(0.1, 1, 50)]
    y = np.r_[np.zeros(50), np.full(50, 10.0)]
    best, second = compute_best_split(fill(x[:, None], y))
    assert best.feature_index == 0
    # 100 distinct values in 64 bins: the cut is the bin boundary nearest 0
    assert abs(best.threshold) <= 0.1
    assert best.gain == pytest.approx(25.0)
    assert second is None


def test_identical_targets_give_zero_gain():
    rng = np.random.default_rng(1)
    best, _ = compute_best_split(fill(rng.random((30, 3)), np.full(30, 4.0)))
    assert best.gain == pytest.approx(0.0, abs=1e-12)


def test_constant_features_have_no_candidate():
    assert compute_best_split(fill(np.ones((10, 2)), np.arange(10.0))) is None


def test_single_observation_has_no_candidate():
    assert compute_best_split(fill([[1.0, 2.0]], [3.0])) is None
    assert should_split(fill([[1.0, 2.0]], [3.0])) is None


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_best_split_matches_brute_force(data):
    p = data.draw(st.integers(1, 4))
    n = data.draw(st.integers(2, 60))
    levels = data.draw(st.integers(2, 12))
    seed = data.draw(st.integers(0, 2**31))
    rng = np.random.default_rng(seed)
    X = rng.integers(0, levels, size=(n, p)).astype(float)
    y = rng.normal(size=n) * 3 + X[:, 0]
    found = compute_best_split(fill(X, y, max_bins=levels))
    oracle = brute_force_split(X, y)
    if oracle is None:
        assert found is None
        return
    best, second = found
    assert best.gain == pytest.approx(oracle[2], rel=1e-9, abs=1e-9)
    assert (best.feature_index, best.threshold) == (oracle[0], pytest.approx(oracle[1]))
    gains = sorted((g for g in per_feature_best_gains(X, y) if g is not None), reverse=True)
    if len(gains) > 1:
        assert second.gain == pytest.approx(gains[1], rel=1e-9, abs=1e-9)


# -- gate ---------------------------------------------------------------------


def test_gate_examples():
    assert gate(10.0, 2.0, 0.1, 0.05)
    assert not gate(10.0, 9.9, 0.1, 0.05)
    assert gate(10.0, 9.9, 0.04, 0.05)  # tie-break once eps < tau
    assert not gate(0.0, 0.0, 0.01, 0.05)


@given(
    st.floats(1e-6, 1e3),
    st.floats(0, 1),
    st.floats(1e-8, 0.5),
    st.integers(1, 10**6),
    st.floats(0, 0.2),
)
def test_gate_monotone_in_evidence(best, ratio, delta, n, tau):
    second = best * ratio
    if gate(best, second, hoeffding_epsilon(1, delta, n), tau):
        for m in (n + 1, 2 * n, 10 * n):
            assert gate(best, second, hoeffding_epsilon(1, delta, m), tau)


def test_should_split_fires_on_clear_separator():
    rng = np.random.default_rng(3)
    X = rng.random((200, 3))
    y = np.where(X[:, 1] < 0.5, 0.0, 10.0)
    cand = should_split(fill(X, y), delta=1e-4, tie_tau=0.05)
    assert cand is not None
    assert cand.feature_index == 1
    assert cand.threshold == pytest.approx(0.5, abs=0.05)
