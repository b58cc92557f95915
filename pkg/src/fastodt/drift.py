"""Page-Hinkley detector for upward shifts in a monitored error stream.

Thresholds are set relative to the spread of the first ``warmup`` values
after every reset, so one configuration serves streams of any scale:

    lambda = lambda_factor * sigma,  tolerance = delta_factor * sigma

A warning is raised when the statistic passes ``warning_ratio * lambda``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

NONE, WARNING, DRIFT = 0, 1, 2


@dataclass
class PageHinkleyConfig:
    lambda_factor: float = 50.0
    delta_factor: float = 0.25
    warning_ratio: float = 0.6
    warmup: int = 200


class PageHinkley:
    def __init__(self, config: PageHinkleyConfig | None = None):
        self.config = config or PageHinkleyConfig()
        self.n_detections = 0
        self.reset()

    def reset(self) -> None:
        self.n = 0
        self.mean = 0.0
        self._m2 = 0.0
        self.cum = 0.0
        self.cum_min = 0.0
        self.threshold = math.inf
        self.tolerance = 0.0

    @property
    def statistic(self) -> float:
        return self.cum - self.cum_min

    def update(self, value: float) -> int:
        """Feed one value; returns NONE, WARNING or DRIFT. The detector resets on DRIFT."""
        self.n += 1
        prev_mean = self.mean
        self.mean += (value - prev_mean) / self.n
        if self.n <= self.config.warmup:
            self._m2 += (value - prev_mean) * (value - self.mean)
            if self.n == self.config.warmup:
                sigma = math.sqrt(self._m2 / max(self.n - 1, 1))
                self.threshold = self.config.lambda_factor * sigma
                self.tolerance = self.config.delta_factor * sigma
            return NONE
        self.cum += value - self.mean - self.tolerance
        if self.cum < self.cum_min:
            self.cum_min = self.cum
        stat = self.cum - self.cum_min
        if stat > self.threshold:
            self.n_detections += 1
            self.reset()
            return DRIFT
        if stat > self.config.warning_ratio * self.threshold:
            return WARNING
        return NONE

    def to_dict(self) -> dict:
        return {
            "config": asdict(self.config),
            "state": [self.n, self.mean, self._m2, self.cum, self.cum_min,
                      None if math.isinf(self.threshold) else self.threshold, self.tolerance],
            "n_detections": self.n_detections,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PageHinkley":
        det = cls(PageHinkleyConfig(**d["config"]))
        n, mean, m2, cum, cum_min, thr, tol = d["state"]
        det.n, det.mean, det._m2, det.cum, det.cum_min = int(n), mean, m2, cum, cum_min
        det.threshold = math.inf if thr is None else thr
        det.tolerance = tol
        det.n_detections = d["n_detections"]
        return det


class NoDetector:
    n_detections = 0

    def update(self, value: float) -> int:
        return NONE

    def reset(self) -> None:
        pass

    def to_dict(self) -> dict:
        return {"config": None}
