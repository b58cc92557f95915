import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fastodt.stream import NonFiniteValueError, ResidualTransform, Sample

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


def s(y, x=(0.0,)):
    return Sample(x, y)


def test_residual_first_sample_emits_nothing():
    t = ResidualTransform("residual")
    assert t.push(s(5.0)) is None


def test_residual_target_is_difference():
    t = ResidualTransform("residual")
    t.push(s(5.0))
    assert t.push(s(7.5, (1.0, 2.0))) == ((1.0, 2.0), 2.5)


def test_direct_mode_passes_target_through():
    t = ResidualTransform("direct")
    assert t.push(s(7.5)) == ((0.0,), 7.5)


@pytest.mark.parametrize("prev, r_hat, expected", [(5.0, 2.5, 7.5), (5.0, 0.0, 5.0), (-1.0, -0.5, -1.5)])
def test_reconstruct(prev, r_hat, expected):
    t = ResidualTransform("residual")
    t.push(s(prev))
    assert t.reconstruct(r_hat) == expected


def test_reconstruct_before_any_sample_raises():
    with pytest.raises(RuntimeError):
        ResidualTransform("residual").reconstruct(1.0)


def test_unknown_mode_rejected():
    with pytest.raises(ValueError):
        ResidualTransform("levels")


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_rejected(bad):
    with pytest.raises(NonFiniteValueError):
        Sample((1.0,), bad)
    with pytest.raises(NonFiniteValueError):
        Sample((bad,), 1.0)


@given(st.lists(finite, min_size=2, max_size=50))
def test_perfect_residual_predictor_reproduces_series(ys):
    t = ResidualTransform("residual")
    t.push(s(ys[0]))
    for y in ys[1:]:
        true_residual = y - t.previous_target
        assert t.reconstruct(true_residual) == pytest.approx(y, abs=1e-9)
        _, r = t.push(s(y))
        assert r == true_residual


@given(st.lists(finite, min_size=2, max_size=50))
def test_zero_residual_is_persistence(ys):
    t = ResidualTransform("residual")
    t.push(s(ys[0]))
    for prev, y in zip(ys, ys[1:]):
        assert t.reconstruct(0.0) == prev
        t.push(s(y))
