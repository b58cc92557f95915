"""Prequential (test-then-train) evaluation loop and its report."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional

from ..stream import ResidualTransform, Sample
from .config import DataError, RunConfig
from .ingest import ingest
from .models import build_model

MAPE_EPS = 1e-8
MEMORY_POLL = 1000


@dataclass
class EvalReport:
    model: str
    dataset: str
    target_mode: str
    n_samples: int
    n_scored: int  # samples entering RMSE after warm-up
    n_warmup: int
    mape_skipped: int  # scored samples left out of MAPE because |y| <= 1e-8
    mape_percent: float
    rmse: float
    warmup_mape_percent: float
    warmup_rmse: float
    throughput_samples_per_sec: float
    elapsed_sec: float
    peak_node_count: int
    peak_bin_count: int
    final_split_count: int
    window: int
    window_rmse: List[float] = field(default_factory=list)
    window_mape_percent: List[float] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)


class _Acc:
    __slots__ = ("n", "sq", "ape", "n_ape", "skipped")

    def __init__(self):
        self.n = 0
        self.sq = 0.0
        self.ape = 0.0
        self.n_ape = 0
        self.skipped = 0

    def add(self, y: float, y_hat: float) -> None:
        e = y - y_hat
        self.n += 1
        self.sq += e * e
        if abs(y) > MAPE_EPS:
            self.ape += abs(e) / abs(y)
            self.n_ape += 1
        else:
            self.skipped += 1

    @property
    def rmse(self) -> float:
        return math.sqrt(self.sq / self.n) if self.n else math.nan

    @property
    def mape(self) -> float:
        return 100.0 * self.ape / self.n_ape if self.n_ape else math.nan


def _footprint(model):
    fp = getattr(model, "memory_footprint", None)
    return fp() if fp is not None else (0, 0, 0)


def prequential(
    model,
    samples: Iterable[Sample],
    target_mode: str = "residual",
    warmup: int = 0,
    window: int = 500,
    model_name: str = "model",
    dataset_name: str = "stream",
) -> EvalReport:
    """Score each sample with the current model, then train on it."""
    transform = ResidualTransform(target_mode)
    main, warm, win = _Acc(), _Acc(), _Acc()
    window_rmse: List[float] = []
    window_mape: List[float] = []
    peak_nodes = peak_bins = 0
    n = 0
    start = time.perf_counter()
    for s in samples:
        if n % MEMORY_POLL == 0:
            nodes, bins, _ = _footprint(model)
            peak_nodes, peak_bins = max(peak_nodes, nodes), max(peak_bins, bins)
        n += 1
        if transform.ready():
            y_hat = transform.reconstruct(model.predict(s.features))
            if warm.n < warmup:
                warm.add(s.target, y_hat)
            else:
                main.add(s.target, y_hat)
                win.add(s.target, y_hat)
                if win.n == window:
                    window_rmse.append(win.rmse)
                    window_mape.append(win.mape)
                    win = _Acc()
        pair = transform.push(s)
        if pair is not None:
            model.update(*pair)
    elapsed = time.perf_counter() - start
    nodes, bins, splits = _footprint(model)
    return EvalReport(
        model=model_name,
        dataset=dataset_name,
        target_mode=target_mode,
        n_samples=n,
        n_scored=main.n,
        n_warmup=warm.n,
        mape_skipped=main.skipped,
        mape_percent=main.mape,
        rmse=main.rmse,
        warmup_mape_percent=warm.mape,
        warmup_rmse=warm.rmse,
        throughput_samples_per_sec=n / elapsed if elapsed > 0 else math.inf,
        elapsed_sec=elapsed,
        peak_node_count=max(peak_nodes, nodes),
        peak_bin_count=max(peak_bins, bins),
        final_split_count=splits,
        window=window,
        window_rmse=window_rmse,
        window_mape_percent=window_mape,
    )


def run_prequential(cfg: RunConfig, samples: Optional[List[Sample]] = None) -> EvalReport:
    if samples is None:
        samples = ingest(cfg.dataset)
    if not samples:
        raise DataError(f"dataset {cfg.dataset.name!r} yields no samples")
    n_features = len(samples[0].features)
    model = build_model(cfg.model, cfg.params, n_features, cfg.seed)
    report = prequential(
        model,
        samples,
        target_mode=cfg.target_mode,
        warmup=cfg.warmup,
        window=cfg.window,
        model_name=cfg.label,
        dataset_name=cfg.dataset.name,
    )
    report.config = cfg.to_mapping()
    return report
