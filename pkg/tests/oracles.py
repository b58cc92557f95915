"""Independent reference computations used as test oracles.

Nothing here touches the histogram or mask code paths under test.
"""

import math

import numpy as np


def brute_force_split(X, y):
    """Exhaustive variance-reduction search over raw data.

    Thresholds are midpoints of adjacent distinct values. Returns
    (feature, threshold, gain) with ties broken by lower feature, then lower
    threshold, or None when every feature is constant.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(y)
    var_all = y.var()
    best = None
    for f in range(X.shape[1]):
        values = np.unique(X[:, f])
        for a, b in zip(values[:-1], values[1:]):
            thr = 0.5 * (a + b)
            left = y[X[:, f] < thr]
            right = y[X[:, f] >= thr]
            gain = var_all - len(left) / n * left.var() - len(right) / n * right.var()
            if best is None or gain > best[2] + 1e-12:
                best = (f, thr, gain)
    return best


def per_feature_best_gains(X, y):
    """Best brute-force gain of every feature (None for constant features)."""
    X = np.asarray(X, dtype=float)
    out = []
    for f in range(X.shape[1]):
        sub = brute_force_split(X[:, [f]], y)
        out.append(None if sub is None else sub[2])
    return out


def epsilon_closed_form(R, delta, n):
    import mpmath

    mpmath.mp.dps = 40
    return float(mpmath.sqrt(mpmath.mpf(R) ** 2 * mpmath.log(1 / mpmath.mpf(delta)) / (2 * n)))


def friedman_mean_quadrature():
    """E[y] of noise-free Friedman #1 by numerical integration."""
    from scipy import integrate

    sin_term, _ = integrate.dblquad(lambda u, v: math.sin(math.pi * u * v), 0, 1, 0, 1)
    return 10 * sin_term + 20 / 12 + 10 * 0.5 + 5 * 0.5
