"""Report serialisation: versioned JSON, flat CSV and a model x dataset text table."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, fields
from typing import Iterable, List, Sequence

from .harness import EvalReport

SCHEMA_VERSION = 1
FORMATS = ("json", "csv", "table")
SERIES_FIELDS = ("window_rmse", "window_mape_percent", "config")
CSV_FIELDS = [f.name for f in fields(EvalReport) if f.name not in SERIES_FIELDS]


def _clean(v):
    # JSON has no NaN/inf
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, list):
        return [_clean(x) for x in v]
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    return v


def _restore(v):
    return math.nan if v is None else v


def to_json(reports: Sequence[EvalReport]) -> str:
    payload = {
        "schema": "fastodt-eval-report",
        "schema_version": SCHEMA_VERSION,
        "reports": [_clean(asdict(r)) for r in reports],
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def from_json(text: str) -> List[EvalReport]:
    payload = json.loads(text)
    if payload.get("schema") != "fastodt-eval-report" or payload.get("schema_version") != SCHEMA_VERSION:
        raise ValueError("unsupported report schema")
    out = []
    for d in payload["reports"]:
        for k in ("mape_percent", "rmse", "warmup_mape_percent", "warmup_rmse", "throughput_samples_per_sec"):
            d[k] = _restore(d[k])
        d["window_rmse"] = [_restore(v) for v in d["window_rmse"]]
        d["window_mape_percent"] = [_restore(v) for v in d["window_mape_percent"]]
        out.append(EvalReport(**d))
    return out


def to_csv(reports: Sequence[EvalReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        row = asdict(r)
        w.writerow({k: row[k] for k in CSV_FIELDS})
    return buf.getvalue()


def _fmt(v: float) -> str:
    return "n/a" if v is None or not math.isfinite(v) else f"{v:.3f}"


def to_table(reports: Sequence[EvalReport]) -> str:
    """Two blocks, MAPE (%) then RMSE, with one row per model and one column per dataset."""
    models: List[str] = []
    datasets: List[str] = []
    cells = {}
    for r in reports:
        if r.model not in models:
            models.append(r.model)
        if r.dataset not in datasets:
            datasets.append(r.dataset)
        cells[r.model, r.dataset] = r
    width = max([len("Model")] + [len(m) for m in models]) + 2
    colw = max([10] + [len(d) + 2 for d in datasets])
    lines = []
    for title, attr in (("MAPE (%)", "mape_percent"), ("RMSE", "rmse")):
        lines.append(title)
        lines.append("Model".ljust(width) + "".join(d.rjust(colw) for d in datasets))
        lines.append("-" * (width + colw * len(datasets)))
        for m in models:
            row = m.ljust(width)
            for d in datasets:
                r = cells.get((m, d))
                row += (_fmt(getattr(r, attr)) if r else "-").rjust(colw)
            lines.append(row)
        lines.append("")
    return "\n".join(lines)


def emit_report(reports: Iterable[EvalReport] | EvalReport, fmt: str = "json") -> str:
    if isinstance(reports, EvalReport):
        reports = [reports]
    reports = list(reports)
    if fmt == "json":
        return to_json(reports)
    if fmt == "csv":
        return to_csv(reports)
    if fmt == "table":
        return to_table(reports)
    raise ValueError(f"format must be one of {FORMATS}")
