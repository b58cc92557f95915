"""Friedman #1 streams, optionally with an abrupt swap of feature roles."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, TextIO, Tuple

import numpy as np

from .stream import Sample

# mean of the noise-free target under x ~ U(0,1)^5
FRIEDMAN_MEAN = 14.413


@dataclass
class FriedmanConfig:
    n: int = 10_000
    sigma: float = 1.0
    p: int = 10
    seed: int = 0
    drift_time: Optional[int] = None
    permutation: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.p < 5:
            raise ValueError("Friedman #1 needs p >= 5")
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")
        if self.drift_time is not None:
            if not 0 <= self.drift_time < self.n:
                raise ValueError("drift_time must lie in [0, n)")
            if self.permutation is None:
                self.permutation = default_permutation(self.p)
        if self.permutation is not None:
            perm = tuple(int(i) for i in self.permutation)
            if sorted(perm) != list(range(self.p)):
                raise ValueError(f"permutation must reorder range({self.p})")
            self.permutation = perm


def default_permutation(p: int) -> Tuple[int, ...]:
    """Rotate the five informative roles by three places; noise features stay put."""
    return (3, 4, 0, 1, 2) + tuple(range(5, p))


def friedman_target(x: Sequence[float]) -> float:
    return (
        10.0 * math.sin(math.pi * x[0] * x[1])
        + 20.0 * (x[2] - 0.5) ** 2
        + 10.0 * x[3]
        + 5.0 * x[4]
    )


def friedman_batch(X: np.ndarray) -> np.ndarray:
    return (
        10.0 * np.sin(np.pi * X[:, 0] * X[:, 1])
        + 20.0 * (X[:, 2] - 0.5) ** 2
        + 10.0 * X[:, 3]
        + 5.0 * X[:, 4]
    )


def friedman_sample(rng: np.random.Generator, config: FriedmanConfig, t: int = 0) -> Sample:
    """One draw; from ``drift_time`` on, formula position j reads feature ``permutation[j]``."""
    x = rng.random(config.p)
    noise = rng.normal(0.0, config.sigma) if config.sigma > 0 else 0.0
    roles = x
    if config.drift_time is not None and t >= config.drift_time:
        roles = x[list(config.permutation)]
    return Sample(tuple(x.tolist()), friedman_target(roles) + noise)


def friedman_stream(config: FriedmanConfig) -> Iterator[Sample]:
    rng = np.random.default_rng(config.seed)
    for t in range(config.n):
        yield friedman_sample(rng, config, t)


def write_csv(config: FriedmanConfig, out: TextIO) -> int:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([f"x{i + 1}" for i in range(config.p)] + ["y"])
    n = 0
    for s in friedman_stream(config):
        writer.writerow([repr(v) for v in s.features] + [repr(s.target)])
        n += 1
    return n
