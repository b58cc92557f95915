"""Samples and the one-step residual target transform shared by learners and the harness."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

RESIDUAL = "residual"
DIRECT = "direct"
TARGET_MODES = (RESIDUAL, DIRECT)


class NonFiniteValueError(ValueError):
    pass


def as_features(values: Sequence[float]) -> Tuple[float, ...]:
    feats = tuple(float(v) for v in values)
    for v in feats:
        if not math.isfinite(v):
            raise NonFiniteValueError(f"non-finite feature value {v!r}")
    return feats


@dataclass(frozen=True)
class Sample:
    features: Tuple[float, ...]
    target: float
    timestamp: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "features", as_features(self.features))
        target = float(self.target)
        if not math.isfinite(target):
            raise NonFiniteValueError(f"non-finite target {self.target!r}")
        object.__setattr__(self, "target", target)


@dataclass
class ResidualTransform:
    """Maps raw targets to training targets and forecasts back to target space.

    In residual mode the learner sees ``y_t - y_{t-1}`` and forecasts are
    rebuilt as ``y_{t-1} + r_hat``. The first sample of a stream yields no
    training pair.
    """

    mode: str = RESIDUAL
    previous_target: Optional[float] = field(default=None)

    def __post_init__(self):
        if self.mode not in TARGET_MODES:
            raise ValueError(f"unknown target mode {self.mode!r}")

    def push(self, sample: Sample) -> Optional[Tuple[Tuple[float, ...], float]]:
        prev = self.previous_target
        self.previous_target = sample.target
        if self.mode == DIRECT:
            return sample.features, sample.target
        if prev is None:
            return None
        return sample.features, sample.target - prev

    def reconstruct(self, r_hat: float) -> float:
        if self.mode == DIRECT:
            return r_hat
        if self.previous_target is None:
            raise RuntimeError("reconstruct called before any sample was pushed")
        return self.previous_target + r_hat

    def ready(self) -> bool:
        """True when a forecast can be produced for the next sample."""
        return self.mode == DIRECT or self.previous_target is not None
