"""CSV ingestion: parsing, hourly aggregation and lag/calendar featurisation."""

from __future__ import annotations

import math
from typing import List, Optional

import numpy as np
import pandas as pd

from ..datagen import FriedmanConfig, friedman_stream
from ..stream import NonFiniteValueError, Sample
from .config import ConfigError, DataError, DatasetSpec

HEADER_LINES = 1


def _row(i: int) -> int:
    # 1-based file line of data row i
    return i + HEADER_LINES + 1


def _numeric(col: pd.Series, name: str, drop_missing: bool) -> pd.Series:
    values = pd.to_numeric(col, errors="coerce")
    bad = values.isna() & col.notna()
    if bad.any():
        i = int(np.flatnonzero(bad.to_numpy())[0])
        raise DataError(f"row {_row(col.index[i])}: cannot parse {name}={col.iloc[i]!r} as a number")
    if not drop_missing and values.isna().any():
        i = int(np.flatnonzero(values.isna().to_numpy())[0])
        raise DataError(f"row {_row(col.index[i])}: missing value in column {name!r}")
    return values.astype(float)


def _timestamps(df: pd.DataFrame, spec: DatasetSpec) -> pd.Series:
    cols = [spec.timestamp_column] if spec.timestamp_column else list(spec.timestamp_columns)
    raw = df[cols].astype(str).agg(" ".join, axis=1) if len(cols) > 1 else df[cols[0]].astype(str)
    if spec.timestamp_format is None and raw.str.fullmatch(r"-?\d+").all():
        ts = pd.to_datetime(raw.astype("int64"), unit="s")
    else:
        ts = pd.to_datetime(raw, format=spec.timestamp_format, errors="coerce")
        if ts.isna().any():
            i = int(np.flatnonzero(ts.isna().to_numpy())[0])
            raise DataError(f"row {_row(raw.index[i])}: cannot parse timestamp {raw.iloc[i]!r}")
    back = ts.diff() < pd.Timedelta(0)
    if back.any():
        i = int(np.flatnonzero(back.to_numpy())[0])
        raise DataError(f"row {_row(ts.index[i])}: timestamp goes backwards ({ts.iloc[i]})")
    return ts


def load_frame(spec: DatasetSpec) -> pd.DataFrame:
    """Parsed, validated and (optionally) hourly-aggregated frame indexed by timestamp."""
    try:
        df = pd.read_csv(
            spec.path,
            sep=spec.delimiter,
            dtype=str,
            na_values=spec.na_values or None,
            keep_default_na=True,
            nrows=spec.limit,
            encoding="utf-8",
        )
    except FileNotFoundError as exc:
        raise DataError(f"dataset not found: {spec.path}") from exc
    except (pd.errors.ParserError, UnicodeDecodeError, pd.errors.EmptyDataError) as exc:
        raise DataError(f"cannot parse {spec.path}: {exc}") from exc

    time_cols = [spec.timestamp_column] if spec.timestamp_column else list(spec.timestamp_columns or [])
    if spec.feature_columns is not None:
        covariates = list(spec.feature_columns)
    elif spec.lags:
        covariates = []
    else:
        covariates = [c for c in df.columns if c != spec.target_column and c not in time_cols]
    missing = [c for c in [spec.target_column, *time_cols, *covariates] if c not in df.columns]
    if missing:
        raise DataError(f"missing columns in {spec.path}: {missing}")

    out = pd.DataFrame({c: _numeric(df[c], c, spec.drop_missing) for c in covariates})
    out["__y"] = _numeric(df[spec.target_column], spec.target_column, spec.drop_missing)
    if time_cols:
        out.index = _timestamps(df, spec)
    if spec.drop_missing:
        out = out.dropna()

    if spec.resample != "none":
        buckets = out.groupby(out.index.floor("h"))
        agg = {c: "mean" for c in covariates}
        agg["__y"] = "sum" if spec.resample == "hourly_sum" else "mean"
        # groupby only yields occupied buckets, so empty hours vanish here
        out = buckets.agg(agg)
    out.attrs["covariates"] = covariates
    return out


def featurise(frame: pd.DataFrame, spec: DatasetSpec) -> List[Sample]:
    covariates = frame.attrs.get("covariates", [c for c in frame.columns if c != "__y"])
    y = frame["__y"].to_numpy(dtype=float)
    X = frame[covariates].to_numpy(dtype=float) if covariates else np.empty((len(frame), 0))
    parts = [X]
    if spec.lags:
        L = np.full((len(y), len(spec.lags)), np.nan)
        for j, lag in enumerate(spec.lags):
            L[lag:, j] = y[:-lag]
        parts.append(L)
    has_time = isinstance(frame.index, pd.DatetimeIndex)
    if spec.calendar_features:
        hour = frame.index.hour.to_numpy() + frame.index.minute.to_numpy() / 60.0
        dow = frame.index.dayofweek.to_numpy()
        parts.append(
            np.column_stack(
                [
                    np.sin(2 * math.pi * hour / 24),
                    np.cos(2 * math.pi * hour / 24),
                    np.sin(2 * math.pi * dow / 7),
                    np.cos(2 * math.pi * dow / 7),
                ]
            )
        )
    feats = np.hstack(parts)
    if feats.shape[1] == 0:
        raise DataError("dataset yields no features: configure lags, covariates or calendar features")
    stamps = frame.index.as_unit("s").asi8 if has_time else None
    start = max(spec.lags, default=0)
    samples = []
    for i in range(start, len(y)):
        try:
            samples.append(
                Sample(tuple(feats[i].tolist()), float(y[i]), None if stamps is None else int(stamps[i]))
            )
        except NonFiniteValueError as exc:
            raise DataError(f"sample {i}: {exc}") from exc
    return samples


def ingest(spec: DatasetSpec) -> List[Sample]:
    if spec.generator is not None:
        return _generate(spec)
    return featurise(load_frame(spec), spec)


def _generate(spec: DatasetSpec) -> List[Sample]:
    g = dict(spec.generator)
    kind = g.pop("kind", "friedman")
    if kind != "friedman":
        raise ConfigError(f"unknown generator kind {kind!r}")
    drift_at: Optional[int] = g.pop("drift_at", None)
    try:
        cfg = FriedmanConfig(drift_time=drift_at, **g)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad generator settings: {exc}") from exc
    samples = list(friedman_stream(cfg))
    return samples[: spec.limit] if spec.limit else samples
