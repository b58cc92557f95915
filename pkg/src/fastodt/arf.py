"""Adaptive-random-forest style bagging of FastODTs.

Each member sees a fixed random subset of ceil(sqrt(p)) features for the
lifetime of its tree (per-split subsetting would break the one-rule-per-
depth layout), trains on Poisson(lambda) copies of every sample, and
watches its own absolute error with a drift detector. A warning starts a
background tree; a confirmed drift swaps it in.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .drift import DRIFT, WARNING, NoDetector, PageHinkley, PageHinkleyConfig
from .tree import FastODT, Footprint, TreeConfig

DETECTORS = ("page_hinkley", "none")


@dataclass
class ArfConfig:
    n_members: int = 10
    lambda_poisson: float = 6.0
    detector: str = "page_hinkley"
    page_hinkley: PageHinkleyConfig = field(default_factory=PageHinkleyConfig)
    tree: TreeConfig = field(default_factory=TreeConfig)

    def __post_init__(self):
        if isinstance(self.tree, dict):
            self.tree = TreeConfig(**self.tree)
        if isinstance(self.page_hinkley, dict):
            self.page_hinkley = PageHinkleyConfig(**self.page_hinkley)
        if self.n_members < 1:
            raise ValueError("n_members must be >= 1")
        if self.lambda_poisson <= 0:
            raise ValueError("lambda_poisson must be positive")
        if self.detector not in DETECTORS:
            raise ValueError(f"detector must be one of {DETECTORS}")


class ArfMember:
    def __init__(self, ens: "ArfEnsemble", rng: np.random.Generator):
        self._ens = ens
        self.rng = rng
        self.feature_mask = ens._draw_mask(rng)
        self.tree = ens._new_tree(len(self.feature_mask))
        self.detector = ens._new_detector()
        self.background: Optional[FastODT] = None
        self.background_mask: Optional[List[int]] = None
        self.n_replacements = 0

    def project(self, x: Sequence[float], mask=None) -> List[float]:
        return [x[j] for j in (self.feature_mask if mask is None else mask)]

    def predict(self, x: Sequence[float]) -> float:
        return self.tree.predict(self.project(x))

    def update(self, x: Sequence[float], y: float) -> None:
        ens = self._ens
        xs = self.project(x)
        err = abs(y - self.tree.predict(xs))
        k = int(self.rng.poisson(ens.config.lambda_poisson))
        if k:
            xb = None if self.background is None else self.project(x, self.background_mask)
            for _ in range(k):
                self.tree.update(xs, y)
                if xb is not None:
                    self.background.update(xb, y)
        signal = self.detector.update(err)
        if signal == WARNING and self.background is None:
            self.background_mask = ens._draw_mask(self.rng)
            self.background = ens._new_tree(len(self.background_mask))
        elif signal == DRIFT:
            if self.background is None:
                self.feature_mask = ens._draw_mask(self.rng)
                self.tree = ens._new_tree(len(self.feature_mask))
            else:
                self.feature_mask = self.background_mask
                self.tree = self.background
            self.background = None
            self.background_mask = None
            self.detector.reset()
            self.n_replacements += 1


class ArfEnsemble:
    def __init__(self, n_features: int, config: Optional[ArfConfig] = None, seed: int = 0):
        self.n_features = n_features
        self.config = config or ArfConfig()
        self.seed = seed
        self.mask_size = math.ceil(math.sqrt(n_features))
        streams = np.random.SeedSequence(seed).spawn(self.config.n_members)
        self.members = [ArfMember(self, np.random.Generator(np.random.PCG64(s))) for s in streams]

    def _draw_mask(self, rng: np.random.Generator) -> List[int]:
        return sorted(int(j) for j in rng.choice(self.n_features, self.mask_size, replace=False))

    def _new_tree(self, n_features: int) -> FastODT:
        return FastODT(n_features, self.config.tree)

    def _new_detector(self):
        if self.config.detector == "none":
            return NoDetector()
        return PageHinkley(self.config.page_hinkley)

    @property
    def n_replacements(self) -> int:
        return sum(m.n_replacements for m in self.members)

    def update(self, x: Sequence[float], y: float) -> None:
        for m in self.members:
            m.update(x, y)

    def predict(self, x: Sequence[float]) -> float:
        return sum(m.predict(x) for m in self.members) / len(self.members)

    def memory_footprint(self) -> Footprint:
        fp = Footprint(0, 0, 0)
        for m in self.members:
            fp = fp + m.tree.memory_footprint()
            if m.background is not None:
                fp = fp + m.background.memory_footprint()
        return fp

    def to_dict(self) -> dict:
        return {
            "format": "arf-fastodt",
            "version": 1,
            "n_features": self.n_features,
            "seed": self.seed,
            "config": asdict(self.config),
            "members": [
                {
                    "feature_mask": m.feature_mask,
                    "tree": m.tree.to_dict(),
                    "detector": m.detector.to_dict(),
                    "background_mask": m.background_mask,
                    "background": None if m.background is None else m.background.to_dict(),
                    "rng": m.rng.bit_generator.state,
                    "n_replacements": m.n_replacements,
                }
                for m in self.members
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ArfEnsemble":
        if d.get("format") != "arf-fastodt" or d.get("version") != 1:
            raise ValueError("not a supported ARF snapshot")
        ens = cls(d["n_features"], ArfConfig(**d["config"]), d["seed"])
        for m, s in zip(ens.members, d["members"]):
            m.feature_mask = list(s["feature_mask"])
            m.tree = FastODT.from_dict(s["tree"])
            if s["detector"]["config"] is not None:
                m.detector = PageHinkley.from_dict(s["detector"])
            m.background_mask = s["background_mask"]
            m.background = None if s["background"] is None else FastODT.from_dict(s["background"])
            m.rng.bit_generator.state = s["rng"]
            m.n_replacements = s["n_replacements"]
        return ens
