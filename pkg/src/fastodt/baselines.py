"""Reference learners: running mean and a node-wise (non-oblivious) Hoeffding regression tree."""

from __future__ import annotations

from typing import Optional, Sequence

from .split_stats import NodeStats, should_split
from .tree import Footprint, SplitRule, TreeConfig, seed_children


class MeanPredictor:
    def __init__(self):
        self.count = 0
        self.sum = 0.0

    def update(self, x, y: float) -> None:
        self.count += 1
        self.sum += y

    def predict(self, x=None) -> float:
        return self.sum / self.count if self.count else 0.0

    def memory_footprint(self) -> Footprint:
        return Footprint(0, 0, 0)


class PersistencePredictor:
    """Predicts zero; in residual target mode this is the last-value forecast."""

    def update(self, x, y: float) -> None:
        pass

    def predict(self, x=None) -> float:
        return 0.0

    def memory_footprint(self) -> Footprint:
        return Footprint(0, 0, 0)


class _Node:
    __slots__ = ("rule", "left", "right", "stats", "count", "total", "depth")

    def __init__(self, depth: int, stats: Optional[NodeStats], count: int = 0, total: float = 0.0):
        self.rule: Optional[SplitRule] = None
        self.left: Optional[_Node] = None
        self.right: Optional[_Node] = None
        self.stats = stats
        self.count = count
        self.total = total
        self.depth = depth


class NodewiseHoeffdingTree:
    """VFDT-style regressor: every internal node owns its split rule.

    Shares gate and histogram settings with :class:`FastODT` through
    :class:`TreeConfig`, so differences between the two isolate the
    one-rule-per-depth constraint.
    """

    def __init__(self, n_features: int, config: Optional[TreeConfig] = None, **overrides):
        self.n_features = n_features
        self.config = config or TreeConfig(**overrides)
        self.root = self._leaf(0)
        self.n_splits = 0

    def _leaf(self, depth: int, count: int = 0, total: float = 0.0) -> _Node:
        stats = NodeStats(self.n_features, self.config.max_bins) if depth < self.config.max_depth else None
        return _Node(depth, stats, count, total)

    def _sort(self, x: Sequence[float]) -> _Node:
        node = self.root
        while node.rule is not None:
            node = node.left if x[node.rule.feature_index] < node.rule.threshold else node.right
        return node

    def update(self, x: Sequence[float], y: float) -> None:
        leaf = self._sort(x)
        leaf.count += 1
        leaf.total += y
        if leaf.stats is None:
            return
        leaf.stats.update(x, y)
        if leaf.stats.n % self.config.n_grace:
            return
        cand = should_split(leaf.stats, self.config.delta, self.config.tie_tau)
        if cand is None:
            return
        left, right = seed_children(leaf.stats, cand)
        leaf.rule = SplitRule(cand.feature_index, cand.threshold)
        leaf.left = self._leaf(leaf.depth + 1, left.count, left.total)
        leaf.right = self._leaf(leaf.depth + 1, right.count, right.total)
        leaf.stats = None
        self.n_splits += 1

    def predict(self, x: Sequence[float]) -> float:
        node = self.root
        best = node if node.count else None
        while node.rule is not None:
            node = node.left if x[node.rule.feature_index] < node.rule.threshold else node.right
            if node.count:
                best = node
        return best.total / best.count if best is not None else 0.0

    def _walk(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if node.rule is not None:
                stack.extend((node.left, node.right))

    @property
    def depth(self) -> int:
        return max(n.depth for n in self._walk())

    def memory_footprint(self) -> Footprint:
        nodes = bins = 0
        for n in self._walk():
            nodes += 1
            if n.stats is not None:
                bins += n.stats.bin_count
        return Footprint(nodes, bins, self.n_splits)
