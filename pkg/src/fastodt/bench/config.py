"""Run configuration and its YAML mapping.

A config file maps key-for-key onto :class:`RunConfig`::

    model: incubation_boost
    params: {learning_rate: 0.3, max_trees: 10, tree: {max_depth: 6}}
    target_mode: residual
    seed: 0
    warmup: 0
    dataset:
      name: electricity
      path: data/household_power_consumption.txt
      delimiter: ";"
      timestamp_columns: [Date, Time]
      timestamp_format: "%d/%m/%Y %H:%M:%S"
      target_column: Global_active_power
      resample: hourly_mean
      lags: [1, 2, 3, 24]
      calendar_features: true

A grid file holds ``models`` (list of {model, params}) and ``datasets``
(list of dataset mappings); the remaining top-level keys apply to every
cell.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from ..stream import TARGET_MODES

MODELS = ("mean", "persistence", "vfdt", "fastodt", "arf_fastodt", "incubation_boost")
RESAMPLE = ("none", "hourly_mean", "hourly_sum")


class ConfigError(ValueError):
    pass


class DataError(ValueError):
    pass


@dataclass
class DatasetSpec:
    name: Optional[str] = None
    path: Optional[str] = None
    # inline generator instead of a file, e.g. {kind: friedman, n: 10000, sigma: 1.0}
    generator: Optional[Dict[str, Any]] = None
    target_column: str = "y"
    timestamp_column: Optional[str] = None
    timestamp_columns: Optional[List[str]] = None
    timestamp_format: Optional[str] = None
    feature_columns: Optional[List[str]] = None
    resample: str = "none"
    lags: List[int] = field(default_factory=list)
    calendar_features: bool = False
    delimiter: str = ","
    na_values: List[str] = field(default_factory=list)
    drop_missing: bool = False
    limit: Optional[int] = None

    def __post_init__(self):
        if (self.path is None) == (self.generator is None):
            raise ConfigError("dataset needs exactly one of 'path' or 'generator'")
        if self.resample not in RESAMPLE:
            raise ConfigError(f"resample must be one of {RESAMPLE}, got {self.resample!r}")
        if any(int(l) < 1 for l in self.lags):
            raise ConfigError("lags must be positive integers")
        self.lags = sorted({int(l) for l in self.lags})
        if self.timestamp_column and self.timestamp_columns:
            raise ConfigError("give timestamp_column or timestamp_columns, not both")
        has_time = bool(self.timestamp_column or self.timestamp_columns)
        if (self.resample != "none" or self.calendar_features) and not has_time:
            raise ConfigError("resampling and calendar features need a timestamp column")
        if self.name is None:
            self.name = Path(self.path).stem if self.path else str(self.generator.get("kind", "friedman"))

    @classmethod
    def from_mapping(cls, d: Dict[str, Any]) -> "DatasetSpec":
        return _build(cls, d, "dataset")


@dataclass
class RunConfig:
    model: str
    dataset: DatasetSpec
    params: Dict[str, Any] = field(default_factory=dict)
    target_mode: str = "residual"
    seed: int = 0
    warmup: int = 0
    window: int = 500
    label: Optional[str] = None

    def __post_init__(self):
        if isinstance(self.dataset, dict):
            self.dataset = DatasetSpec.from_mapping(self.dataset)
        if self.model not in MODELS:
            raise ConfigError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.target_mode not in TARGET_MODES:
            raise ConfigError(f"target_mode must be one of {TARGET_MODES}")
        if self.warmup < 0 or self.window < 1:
            raise ConfigError("warmup must be >= 0 and window >= 1")
        if self.label is None:
            self.label = self.model

    @classmethod
    def from_mapping(cls, d: Dict[str, Any]) -> "RunConfig":
        return _build(cls, d, "run config")

    def to_mapping(self) -> Dict[str, Any]:
        return asdict(self)


def _build(cls, d, what):
    if not isinstance(d, dict):
        raise ConfigError(f"{what} must be a mapping")
    known = {f.name for f in fields(cls)}
    unknown = set(d) - known
    if unknown:
        raise ConfigError(f"unknown {what} keys: {sorted(unknown)}")
    try:
        return cls(**d)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid {what}: {exc}") from exc


def load_yaml(path: str) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed YAML in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a mapping")
    return _resolve_paths(data, Path(path).parent)


def _resolve_paths(data, base: Path):
    # dataset paths are relative to the config file
    def fix(ds):
        if isinstance(ds, dict) and ds.get("path") and not Path(ds["path"]).is_absolute():
            candidate = base / ds["path"]
            if candidate.exists() or not Path(ds["path"]).exists():
                ds = {**ds, "path": str(candidate)}
        return ds

    if "dataset" in data:
        data = {**data, "dataset": fix(data["dataset"])}
    if "datasets" in data:
        data = {**data, "datasets": [fix(d) for d in data["datasets"]]}
    return data


def load_run_config(path: str) -> RunConfig:
    return RunConfig.from_mapping(load_yaml(path))


def load_grid(path: str) -> List[RunConfig]:
    data = load_yaml(path)
    models = data.pop("models", None)
    datasets = data.pop("datasets", None)
    if not models or not datasets:
        raise ConfigError("grid config needs non-empty 'models' and 'datasets' lists")
    runs = []
    for ds in datasets:
        for m in models:
            if isinstance(m, str):
                m = {"model": m}
            runs.append(RunConfig.from_mapping({**data, **m, "dataset": ds}))
    return runs
