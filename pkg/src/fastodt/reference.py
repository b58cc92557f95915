"""Pointer-based FastODT that learns by recursive traversal.

Functionally the same learner as :class:`fastodt.tree.FastODT` but written
the slow, obvious way: nodes hold left/right references and every sample
descends from the root. It exists as an independent oracle for the
mask-indexed tree.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from .split_stats import NodeStats, partition, should_split
from .tree import SplitRule, TreeConfig


class RefNode:
    def __init__(self, stats: Optional[NodeStats] = None, count: int = 0, total: float = 0.0):
        self.left: Optional[RefNode] = None
        self.right: Optional[RefNode] = None
        self.stats = stats
        self.count = count
        self.total = total


class TraversalODT:
    def __init__(self, n_features: int, config: Optional[TreeConfig] = None):
        self.n_features = n_features
        self.config = config or TreeConfig()
        self.splits: List[SplitRule] = []
        self.root = RefNode(None if self.config.max_depth == 0 else self._stats())

    def _stats(self) -> NodeStats:
        return NodeStats(self.n_features, self.config.max_bins)

    @property
    def frozen(self) -> bool:
        return len(self.splits) == self.config.max_depth

    def update(self, x: Sequence[float], y: float) -> None:
        if self.frozen and not self.config.leaf_updates_after_growth:
            return
        self._visit(self.root, x, y, 0)

    def _visit(self, node: RefNode, x, y, depth: int) -> None:
        if depth < len(self.splits):
            if node.left is None:
                fresh = depth + 1 == len(self.splits) and not self.frozen
                node.left = RefNode(self._stats() if fresh else None)
                node.right = RefNode(self._stats() if fresh else None)
            rule = self.splits[depth]
            child = node.left if x[rule.feature_index] < rule.threshold else node.right
            self._visit(child, x, y, depth + 1)
            return
        node.count += 1
        node.total += y
        if self.frozen:
            return
        node.stats.update(x, y)
        if node.stats.n % self.config.n_grace:
            return
        cand = should_split(node.stats, self.config.delta, self.config.tie_tau)
        if cand is None:
            return
        hist = node.stats.per_feature[cand.feature_index]
        (nl, sl), (nr, sr) = partition(hist, cand.threshold)
        for other in self._level(depth):
            other.stats = None
        self.splits.append(SplitRule(cand.feature_index, cand.threshold))
        keep = not self.frozen
        node.left = RefNode(self._stats() if keep else None, nl, sl)
        node.right = RefNode(self._stats() if keep else None, nr, sr)

    def _level(self, depth: int) -> List[RefNode]:
        level = [self.root]
        for _ in range(depth):
            level = [c for n in level for c in (n.left, n.right) if c is not None]
        return level

    def route(self, x: Sequence[float]):
        node, depth, idx = self.root, 0, 0
        for rule in self.splits:
            left = x[rule.feature_index] < rule.threshold
            child = node.left if left else node.right
            if child is None:
                break
            idx |= int(left) << depth
            node, depth = child, depth + 1
        return depth, idx

    def predict(self, x: Sequence[float]) -> float:
        node = self.root
        best = node if node.count else None
        for rule in self.splits:
            node = node.left if x[rule.feature_index] < rule.threshold else node.right
            if node is None:
                break
            if node.count:
                best = node
        return best.total / best.count if best is not None else 0.0
