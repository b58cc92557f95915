"""Per-node statistical trackers, the Hoeffding bound and variance-reduction split search.

Each frontier node keeps one :class:`AdaptiveHistogram` per feature. A bin
stores a centroid plus the count and first two moments of the targets that
landed in it, so any boundary between adjacent bins can be scored without
revisiting data.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

DEFAULT_MAX_BINS = 64
DEFAULT_DELTA = 1e-4
DEFAULT_TIE_TAU = 0.05
DEFAULT_GRACE = 50


@dataclass(frozen=True)
class HistogramBin:
    centroid: float
    count: int
    target_sum: float
    target_sum_sq: float


@dataclass(frozen=True)
class SplitCandidate:
    feature_index: int
    threshold: float
    gain: float


class AdaptiveHistogram:
    """Streaming histogram with closest-centroid-pair merging.

    Bins are kept as parallel lists (centroid, count, target sum, target
    sum of squares) sorted by centroid. ``_gaps[j]`` caches the distance
    between centroid ``j`` and ``j + 1`` so the merge step is a single
    ``min`` over the cached gaps.
    """

    __slots__ = ("max_bins", "centroids", "counts", "sums", "sqsums", "_gaps")

    def __init__(self, max_bins: int = DEFAULT_MAX_BINS):
        if max_bins < 1:
            raise ValueError("max_bins must be positive")
        self.max_bins = int(max_bins)
        self.centroids: List[float] = []
        self.counts: List[int] = []
        self.sums: List[float] = []
        self.sqsums: List[float] = []
        self._gaps: List[float] = []

    def __len__(self) -> int:
        return len(self.centroids)

    @property
    def total_count(self) -> int:
        return sum(self.counts)

    @property
    def bins(self) -> List[HistogramBin]:
        return [
            HistogramBin(c, n, s, q)
            for c, n, s, q in zip(self.centroids, self.counts, self.sums, self.sqsums)
        ]

    def insert(self, value: float, target: float) -> None:
        c = self.centroids
        i = bisect_left(c, value)
        if i < len(c) and c[i] == value:
            self.counts[i] += 1
            self.sums[i] += target
            self.sqsums[i] += target * target
            return
        c.insert(i, value)
        self.counts.insert(i, 1)
        self.sums.insert(i, target)
        self.sqsums.insert(i, target * target)
        g = self._gaps
        if len(c) > 1:
            if i == 0:
                g.insert(0, c[1] - value)
            elif i == len(c) - 1:
                g.append(value - c[i - 1])
            else:
                g[i - 1] = value - c[i - 1]
                g.insert(i, c[i + 1] - value)
        if len(c) > self.max_bins:
            self._merge(g.index(min(g)))

    def _merge(self, j: int) -> None:
        c, n, s, q, g = self.centroids, self.counts, self.sums, self.sqsums, self._gaps
        total = n[j] + n[j + 1]
        merged = (c[j] * n[j] + c[j + 1] * n[j + 1]) / total
        c[j] = merged
        n[j] = total
        s[j] += s[j + 1]
        q[j] += q[j + 1]
        del c[j + 1], n[j + 1], s[j + 1], q[j + 1], g[j]
        if j > 0:
            g[j - 1] = merged - c[j - 1]
        if j < len(g):
            g[j] = c[j + 1] - merged

    def to_dict(self) -> dict:
        return {
            "max_bins": self.max_bins,
            "centroids": list(self.centroids),
            "counts": list(self.counts),
            "sums": list(self.sums),
            "sqsums": list(self.sqsums),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AdaptiveHistogram":
        h = cls(d["max_bins"])
        h.centroids = [float(v) for v in d["centroids"]]
        h.counts = [int(v) for v in d["counts"]]
        h.sums = [float(v) for v in d["sums"]]
        h.sqsums = [float(v) for v in d["sqsums"]]
        h._gaps = [b - a for a, b in zip(h.centroids, h.centroids[1:])]
        return h


class NodeStats:
    """Trackers held by one frontier node: a histogram per feature plus target moments."""

    __slots__ = ("per_feature", "n", "target_sum", "target_sum_sq", "target_min", "target_max")

    def __init__(self, n_features: int, max_bins: int = DEFAULT_MAX_BINS):
        self.per_feature = [AdaptiveHistogram(max_bins) for _ in range(n_features)]
        self.n = 0
        self.target_sum = 0.0
        self.target_sum_sq = 0.0
        self.target_min = math.inf
        self.target_max = -math.inf

    def update(self, x: Sequence[float], y: float) -> None:
        self.n += 1
        self.target_sum += y
        self.target_sum_sq += y * y
        if y < self.target_min:
            self.target_min = y
        if y > self.target_max:
            self.target_max = y
        for h, v in zip(self.per_feature, x):
            h.insert(v, y)

    @property
    def bin_count(self) -> int:
        return sum(len(h) for h in self.per_feature)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "target_sum": self.target_sum,
            "target_sum_sq": self.target_sum_sq,
            "target_min": self.target_min if self.n else None,
            "target_max": self.target_max if self.n else None,
            "per_feature": [h.to_dict() for h in self.per_feature],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NodeStats":
        ns = cls(0)
        ns.per_feature = [AdaptiveHistogram.from_dict(h) for h in d["per_feature"]]
        ns.n = int(d["n"])
        ns.target_sum = float(d["target_sum"])
        ns.target_sum_sq = float(d["target_sum_sq"])
        ns.target_min = math.inf if d["target_min"] is None else float(d["target_min"])
        ns.target_max = -math.inf if d["target_max"] is None else float(d["target_max"])
        return ns


def hoeffding_epsilon(value_range: float, delta: float, n: int) -> float:
    """sqrt(R^2 ln(1/delta) / (2n))."""
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if value_range < 0:
        raise ValueError(f"range must be non-negative, got {value_range}")
    return math.sqrt(value_range * value_range * math.log(1.0 / delta) / (2.0 * n))


def _variance(count, total, total_sq):
    mean = total / count
    return np.maximum(0.0, total_sq / count - mean * mean)


def _tie_tol(var_all: float) -> float:
    # gains that differ only by rounding count as ties (lower feature / threshold wins)
    return 1e-12 * var_all + 1e-300


def best_split_for_feature(
    hist: AdaptiveHistogram, feature_index: int, n: int, var_all: float
) -> Optional[SplitCandidate]:
    """Best boundary of one histogram; the lowest threshold wins ties."""
    if len(hist) < 2:
        return None
    counts = np.cumsum(np.asarray(hist.counts[:-1], dtype=float))
    sums = np.cumsum(hist.sums[:-1])
    sqsums = np.cumsum(hist.sqsums[:-1])
    right_n = n - counts
    var_l = _variance(counts, sums, sqsums)
    var_r = _variance(right_n, sums[-1] + hist.sums[-1] - sums, sqsums[-1] + hist.sqsums[-1] - sqsums)
    gains = var_all - (counts / n) * var_l - (right_n / n) * var_r
    j = int(np.argmax(gains >= gains.max() - _tie_tol(var_all)))
    c = hist.centroids
    return SplitCandidate(feature_index, 0.5 * (c[j] + c[j + 1]), max(0.0, float(gains[j])))


def compute_best_split(
    ns: NodeStats,
) -> Optional[Tuple[SplitCandidate, Optional[SplitCandidate]]]:
    """Best split and runner-up, where the runner-up is the best split of another feature.

    Returns None when no feature has two distinct bins. The runner-up is
    None when only a single feature offers a boundary.
    """
    if ns.n < 2:
        return None
    var_all = float(_variance(ns.n, ns.target_sum, ns.target_sum_sq))
    per_feature = []
    for f, h in enumerate(ns.per_feature):
        cand = best_split_for_feature(h, f, ns.n, var_all)
        if cand is not None:
            per_feature.append(cand)
    if not per_feature:
        return None
    tol = _tie_tol(var_all)
    best = per_feature[0]
    for cand in per_feature[1:]:
        if cand.gain > best.gain + tol:
            best = cand
    rest = [c for c in per_feature if c is not best]
    second = None
    for cand in rest:
        if second is None or cand.gain > second.gain + tol:
            second = cand
    return best, second


def gate(best_gain: float, second_gain: float, epsilon: float, tie_tau: float) -> bool:
    """Hoeffding split test on gains normalised by the best gain."""
    if best_gain <= 0.0:
        return False
    margin = 1.0 - second_gain / best_gain
    return margin > epsilon or epsilon < tie_tau


def should_split(
    ns: NodeStats, delta: float = DEFAULT_DELTA, tie_tau: float = DEFAULT_TIE_TAU
) -> Optional[SplitCandidate]:
    found = compute_best_split(ns)
    if found is None:
        return None
    best, second = found
    eps = hoeffding_epsilon(1.0, delta, ns.n)
    if gate(best.gain, second.gain if second is not None else 0.0, eps, tie_tau):
        return best
    return None


def partition(hist: AdaptiveHistogram, threshold: float) -> Tuple[Tuple[int, float], Tuple[int, float]]:
    """(count, target_sum) of the bins left and right of ``threshold``."""
    k = bisect_left(hist.centroids, threshold)
    left = (sum(hist.counts[:k]), math.fsum(hist.sums[:k]))
    right = (sum(hist.counts[k:]), math.fsum(hist.sums[k:]))
    return left, right
