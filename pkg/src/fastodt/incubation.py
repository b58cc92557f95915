"""Incubation Boost: an elastic boosting chain of FastODTs.

New trees learn the current residual outside the chain (the incubator) and
join it only once fully grown. The chain is pruned from the back whenever
a tree stops lowering the monitored prefix error. The first tree is the one
exception: it sits in the chain from the first sample so the ensemble can
always answer.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, List, Optional, Sequence

from .tree import FastODT, Footprint, TreeConfig


@dataclass
class IncubationConfig:
    learning_rate: float = 0.3
    max_trees: int = 10
    error_alpha: float = 0.01
    prune_grace: int = 200
    tree: TreeConfig = field(default_factory=TreeConfig)

    def __post_init__(self):
        if isinstance(self.tree, dict):
            self.tree = TreeConfig(**self.tree)
        if not 0.0 < self.learning_rate <= 1.0:
            raise ValueError("learning_rate must lie in (0, 1]")
        if self.max_trees < 1:
            raise ValueError("max_trees must be >= 1")
        if not 0.0 < self.error_alpha <= 1.0:
            raise ValueError("error_alpha must lie in (0, 1]")
        if self.prune_grace < 0:
            raise ValueError("prune_grace must be >= 0")


@dataclass
class TreeErrorTracker:
    alpha: float = 0.01
    ewma_sq_error: float = 0.0

    def update(self, y: float, y_hat_prefix: float) -> float:
        err = y - y_hat_prefix
        self.ewma_sq_error = (1.0 - self.alpha) * self.ewma_sq_error + self.alpha * err * err
        return self.ewma_sq_error


def compute_prefix_error(tracker: TreeErrorTracker, y: float, y_hat_prefix: float) -> float:
    return tracker.update(y, y_hat_prefix)


@dataclass
class ChainMember:
    tree: FastODT
    tracker: TreeErrorTracker
    age: int = 0  # prefix-error updates seen since joining the chain as a grown tree


class IncubationBoost:
    def __init__(
        self,
        n_features: int,
        config: Optional[IncubationConfig] = None,
        tree_factory: Optional[Callable[[], FastODT]] = None,
    ):
        self.n_features = n_features
        self.config = config or IncubationConfig()
        self._factory = tree_factory or (lambda: FastODT(n_features, self.config.tree))
        self.chain: List[ChainMember] = []
        self.incubator: Optional[FastODT] = None
        self.n_hatched = 0
        self.n_pruned = 0
        self.n_discarded = 0

    def _member(self, tree) -> ChainMember:
        return ChainMember(tree, TreeErrorTracker(self.config.error_alpha))

    def update(self, x: Sequence[float], y: float) -> None:
        eta = self.config.learning_rate
        if not self.chain:
            self.chain.append(self._member(self._factory()))

        y_hat = 0.0
        r = y
        b = None
        eps_min = math.inf
        r_kept = y  # residual after the last tree that survives this update
        for i, m in enumerate(self.chain):
            r_before = r
            y_hat += eta * m.tree.predict(x)
            r = y - y_hat
            if m.tree.is_fully_grown():
                eps = m.tracker.update(y, y_hat)
                m.age += 1
                if eps < eps_min:
                    b, eps_min = i, eps
                elif m.age <= self.config.prune_grace:
                    # still warming up: keep it, but do not let it set the bar
                    b = i
                else:
                    break
            else:
                m.tree.update(x, r_before)
            r_kept = r

        if b is not None and b + 1 < len(self.chain):
            self.n_pruned += len(self.chain) - b - 1
            del self.chain[b + 1 :]
            r_kept = y - eta * sum(m.tree.predict(x) for m in self.chain)

        if self.incubator is None:
            self.incubator = self._factory()
        self.incubator.update(x, r_kept)
        if self.incubator.is_fully_grown():
            if len(self.chain) < self.config.max_trees:
                self.chain.append(self._member(self.incubator))
                self.n_hatched += 1
            else:
                self.n_discarded += 1
            self.incubator = None

    def predict(self, x: Sequence[float]) -> float:
        eta = self.config.learning_rate
        total = 0.0
        for m in self.chain:
            total += eta * m.tree.predict(x)
        return total

    def memory_footprint(self) -> Footprint:
        fp = Footprint(0, 0, 0)
        for m in self.chain:
            fp = fp + m.tree.memory_footprint()
        if self.incubator is not None:
            fp = fp + self.incubator.memory_footprint()
        return fp

    def to_dict(self) -> dict:
        return {
            "format": "incubation-boost",
            "version": 1,
            "n_features": self.n_features,
            "config": asdict(self.config),
            "chain": [
                {"tree": m.tree.to_dict(), "ewma_sq_error": m.tracker.ewma_sq_error, "age": m.age}
                for m in self.chain
            ],
            "incubator": None if self.incubator is None else self.incubator.to_dict(),
            "counters": [self.n_hatched, self.n_pruned, self.n_discarded],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "IncubationBoost":
        if d.get("format") != "incubation-boost" or d.get("version") != 1:
            raise ValueError("not a supported IncubationBoost snapshot")
        ens = cls(d["n_features"], IncubationConfig(**d["config"]))
        for m in d["chain"]:
            member = ens._member(FastODT.from_dict(m["tree"]))
            member.tracker.ewma_sq_error = m["ewma_sq_error"]
            member.age = m["age"]
            ens.chain.append(member)
        if d["incubator"] is not None:
            ens.incubator = FastODT.from_dict(d["incubator"])
        ens.n_hatched, ens.n_pruned, ens.n_discarded = d["counters"]
        return ens
