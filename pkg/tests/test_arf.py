import numpy as np
import pytest

from fastodt.arf import ArfConfig, ArfEnsemble
from fastodt.datagen import FriedmanConfig, friedman_stream
from fastodt.drift import DRIFT, NONE, WARNING, PageHinkley, PageHinkleyConfig
from fastodt.tree import TreeConfig


class ConstTree:
    def __init__(self, v):
        self.v = v

    def predict(self, x):
        return self.v


class FixedDraw:
    """Generator proxy whose Poisson draw is pinned."""

    def __init__(self, rng, k):
        self._rng, self._k = rng, k

    def poisson(self, lam):
        return self._k

    def __getattr__(self, name):
        return getattr(self._rng, name)


def stream(n, seed=0):
    return [(s.features, s.target) for s in friedman_stream(FriedmanConfig(n=n, seed=seed))]


def test_zero_poisson_draw_leaves_tree_untouched():
    ens = ArfEnsemble(10, ArfConfig(n_members=1), seed=0)
    m = ens.members[0]
    m.rng = FixedDraw(m.rng, 0)
    before = m.tree.dumps()
    m.update([0.5] * 10, 3.0)
    assert m.tree.dumps() == before


def test_poisson_weight_repeats_update():
    ens = ArfEnsemble(10, ArfConfig(n_members=1), seed=0)
    m = ens.members[0]
    m.rng = FixedDraw(m.rng, 3)
    m.update([0.5] * 10, 3.0)
    assert m.tree.nodes[0][0].count == 3


@pytest.mark.parametrize("values, expected", [([2.0, 2.0, 2.0], 2.0), ([1.0, 3.0], 2.0)])
def test_prediction_is_member_mean(values, expected):
    ens = ArfEnsemble(10, ArfConfig(n_members=len(values)))
    for m, v in zip(ens.members, values):
        m.tree = ConstTree(v)
    assert ens.predict([0.0] * 10) == expected


def test_single_member_equals_its_tree():
    ens = ArfEnsemble(10, ArfConfig(n_members=1), seed=4)
    for x, y in stream(500):
        ens.update(x, y)
    m = ens.members[0]
    x = [0.3] * 10
    assert ens.predict(x) == m.tree.predict([x[j] for j in m.feature_mask])


def test_feature_masks():
    ens = ArfEnsemble(10, seed=1)
    for m in ens.members:
        assert len(m.feature_mask) == 4
        assert len(set(m.feature_mask)) == 4
        assert all(0 <= j < 10 for j in m.feature_mask)
    assert len({tuple(m.feature_mask) for m in ens.members}) > 1


def test_same_seed_is_bit_identical():
    data = stream(1500, seed=2)
    cfg = ArfConfig(n_members=4, tree=TreeConfig(max_depth=4))
    a, b = ArfEnsemble(10, cfg, seed=7), ArfEnsemble(10, cfg, seed=7)
    for x, y in data:
        assert a.predict(x) == b.predict(x)
        a.update(x, y)
        b.update(x, y)
    assert a.to_dict() == b.to_dict()


def test_snapshot_resumes_identically():
    data = stream(1200, seed=3)
    cfg = ArfConfig(n_members=3, tree=TreeConfig(max_depth=4))
    a = ArfEnsemble(10, cfg, seed=1)
    for x, y in data[:600]:
        a.update(x, y)
    b = ArfEnsemble.from_dict(a.to_dict())
    for x, y in data[600:]:
        a.update(x, y)
        b.update(x, y)
        assert a.predict(x) == b.predict(x)


def test_config_validation():
    with pytest.raises(ValueError):
        ArfConfig(detector="adwin")
    with pytest.raises(ValueError):
        ArfConfig(n_members=0)


# -- Page-Hinkley -----------------------------------------------------------------


def test_page_hinkley_quiet_then_fires_on_shift():
    rng = np.random.default_rng(0)
    ph = PageHinkley(PageHinkleyConfig(warmup=100))
    assert all(ph.update(v) == NONE for v in rng.normal(1.0, 0.1, 2000))
    signals = [ph.update(v) for v in rng.normal(3.0, 0.1, 200)]
    assert WARNING in signals
    assert DRIFT in signals
    assert signals.index(WARNING) < signals.index(DRIFT)


def test_page_hinkley_roundtrip():
    ph = PageHinkley()
    for v in np.random.default_rng(1).random(300):
        ph.update(float(v))
    clone = PageHinkley.from_dict(ph.to_dict())
    for v in np.random.default_rng(2).random(100):
        assert ph.update(float(v)) == clone.update(float(v))
    assert ph.statistic == clone.statistic
