"""FastODT: an oblivious regression tree grown online under a Hoeffding gate.

Every depth shares one (feature, threshold) rule. A sample's leaf is found
by turning the per-depth comparisons into bits and reading them as an
integer, so neither learning nor inference walks node pointers. Nodes live
in a sparse per-depth map ``nodes[depth][index]`` where

    index = sum(bit_d << d),   bit_d = x[feature_d] < threshold_d

so the children of ``(d, i)`` are ``(d + 1, i)`` (right, bit 0) and
``(d + 1, i | 1 << d)`` (left, bit 1), and the ancestor of ``(k, i)`` at
depth ``d`` is ``(d, i mod 2**d)``.

Only nodes on the current global frontier (depth == number of splits)
carry :class:`NodeStats`. Frontier nodes compete: the first one whose gate
fires fixes the rule for that depth, all trackers at that depth are
dropped, and the winner's two children open the next depth. Other branches
catch up lazily the next time a sample reaches them. Once ``max_depth``
rules exist the tree is frozen.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .split_stats import (
    DEFAULT_DELTA,
    DEFAULT_GRACE,
    DEFAULT_MAX_BINS,
    DEFAULT_TIE_TAU,
    NodeStats,
    SplitCandidate,
    partition,
    should_split,
)

SNAPSHOT_VERSION = 1


@dataclass
class TreeConfig:
    max_depth: int = 6
    delta: float = DEFAULT_DELTA
    tie_tau: float = DEFAULT_TIE_TAU
    n_grace: int = DEFAULT_GRACE
    max_bins: int = DEFAULT_MAX_BINS
    leaf_updates_after_growth: bool = False

    def __post_init__(self):
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if self.tie_tau < 0:
            raise ValueError("tie_tau must be >= 0")
        if self.n_grace < 1:
            raise ValueError("n_grace must be >= 1")
        if self.max_bins < 2:
            raise ValueError("max_bins must be >= 2")


class SplitRule(NamedTuple):
    feature_index: int
    threshold: float


class TreeNode:
    __slots__ = ("count", "total", "stats")

    def __init__(self, stats: Optional[NodeStats] = None, count: int = 0, total: float = 0.0):
        self.count = count
        self.total = total
        self.stats = stats

    @property
    def value(self) -> float:
        return self.total / self.count if self.count else 0.0


class Footprint(NamedTuple):
    node_count: int
    bin_count: int
    split_count: int

    def __add__(self, other):
        return Footprint(*(a + b for a, b in zip(self, other)))


def seed_children(stats: NodeStats, cand: SplitCandidate) -> Tuple[TreeNode, TreeNode]:
    """Children (left, right) carrying the parent's target mass on each side of the cut."""
    (nl, sl), (nr, sr) = partition(stats.per_feature[cand.feature_index], cand.threshold)
    return TreeNode(count=nl, total=sl), TreeNode(count=nr, total=sr)


class FastODT:
    def __init__(self, n_features: int, config: Optional[TreeConfig] = None, **overrides):
        if config is None:
            config = TreeConfig(**overrides)
        elif overrides:
            config = TreeConfig(**{**asdict(config), **overrides})
        self.n_features = int(n_features)
        self.config = config
        self._feat: List[int] = []
        self._thr: List[float] = []
        self.nodes: List[Dict[int, TreeNode]] = [{0: TreeNode(self._fresh_stats())}]
        self.frozen = config.max_depth == 0
        if self.frozen:
            self.nodes[0][0].stats = None

    def _fresh_stats(self) -> NodeStats:
        return NodeStats(self.n_features, self.config.max_bins)

    @property
    def splits(self) -> List[SplitRule]:
        return [SplitRule(f, t) for f, t in zip(self._feat, self._thr)]

    @property
    def depth(self) -> int:
        return len(self._feat)

    @property
    def max_depth(self) -> int:
        return self.config.max_depth

    def is_fully_grown(self) -> bool:
        return len(self._feat) == self.config.max_depth

    def _index(self, x: Sequence[float]) -> int:
        idx = 0
        bit = 1
        for f, t in zip(self._feat, self._thr):
            if x[f] < t:
                idx |= bit
            bit <<= 1
        return idx

    def route(self, x: Sequence[float]) -> Tuple[int, int]:
        """(depth, index) of the deepest materialised node on x's bit path."""
        idx = self._index(x)
        for d in range(len(self._feat), 0, -1):
            i = idx & ((1 << d) - 1)
            if i in self.nodes[d]:
                return d, i
        return 0, 0

    def predict(self, x: Sequence[float]) -> float:
        """Mean of the deepest node on x's path that has seen data; 0 for an untrained tree."""
        idx = self._index(x)
        nodes = self.nodes
        for d in range(len(self._feat), -1, -1):
            node = nodes[d].get(idx & ((1 << d) - 1))
            if node is not None and node.count:
                return node.total / node.count
        return 0.0

    def _materialise(self, idx: int, with_stats: bool) -> TreeNode:
        # open every missing level on the path; only the frontier level gets trackers
        k = len(self._feat)
        node = self.nodes[0][0]
        for d in range(k):
            level = self.nodes[d + 1]
            parent = idx & ((1 << d) - 1)
            if parent not in level:
                stats = with_stats and d + 1 == k
                level[parent] = TreeNode(self._fresh_stats() if stats else None)
                level[parent | (1 << d)] = TreeNode(self._fresh_stats() if stats else None)
            node = level[idx & ((1 << (d + 1)) - 1)]
        return node

    def update(self, x: Sequence[float], y: float) -> None:
        if self.frozen:
            if self.config.leaf_updates_after_growth:
                idx = self._index(x)
                node = self.nodes[-1].get(idx) or self._materialise(idx, with_stats=False)
                node.count += 1
                node.total += y
            return
        k = len(self._feat)
        idx = self._index(x)
        node = self.nodes[k].get(idx)
        if node is None:
            node = self._materialise(idx, with_stats=True)
        node.count += 1
        node.total += y
        stats = node.stats
        stats.update(x, y)
        if stats.n % self.config.n_grace == 0:
            cand = should_split(stats, self.config.delta, self.config.tie_tau)
            if cand is not None:
                self._commit(idx, node, cand)

    def _commit(self, idx: int, winner: TreeNode, cand: SplitCandidate) -> None:
        k = len(self._feat)
        left, right = seed_children(winner.stats, cand)
        self._feat.append(cand.feature_index)
        self._thr.append(cand.threshold)
        for n in self.nodes[k].values():
            n.stats = None
        self.frozen = len(self._feat) == self.config.max_depth
        if not self.frozen:
            left.stats = self._fresh_stats()
            right.stats = self._fresh_stats()
        self.nodes.append({idx | (1 << k): left, idx: right})

    def memory_footprint(self) -> Footprint:
        n_nodes = 0
        n_bins = 0
        for level in self.nodes:
            n_nodes += len(level)
            for node in level.values():
                if node.stats is not None:
                    n_bins += node.stats.bin_count
        return Footprint(n_nodes, n_bins, len(self._feat))

    def iter_nodes(self):
        for d, level in enumerate(self.nodes):
            for i, node in level.items():
                yield d, i, node

    # -- snapshots -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "format": "fastodt-tree",
            "version": SNAPSHOT_VERSION,
            "n_features": self.n_features,
            "config": asdict(self.config),
            "splits": [[f, t] for f, t in zip(self._feat, self._thr)],
            "frozen": self.frozen,
            "nodes": [
                [d, i, n.count, n.total, None if n.stats is None else n.stats.to_dict()]
                for d, i, n in self.iter_nodes()
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FastODT":
        if d.get("format") != "fastodt-tree" or d.get("version") != SNAPSHOT_VERSION:
            raise ValueError("not a supported FastODT snapshot")
        tree = cls(d["n_features"], TreeConfig(**d["config"]))
        tree._feat = [int(f) for f, _ in d["splits"]]
        tree._thr = [float(t) for _, t in d["splits"]]
        tree.nodes = [{} for _ in range(len(tree._feat) + 1)]
        for depth, i, count, total, stats in d["nodes"]:
            tree.nodes[depth][i] = TreeNode(
                None if stats is None else NodeStats.from_dict(stats), int(count), float(total)
            )
        tree.frozen = bool(d["frozen"])
        return tree

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "FastODT":
        return cls.from_dict(json.loads(text))
