"""Name -> learner construction for the harness."""

from __future__ import annotations

from typing import Any, Dict

from ..arf import ArfConfig, ArfEnsemble
from ..baselines import MeanPredictor, NodewiseHoeffdingTree, PersistencePredictor
from ..incubation import IncubationBoost, IncubationConfig
from ..tree import FastODT, TreeConfig
from .config import ConfigError


def build_model(name: str, params: Dict[str, Any], n_features: int, seed: int = 0):
    params = dict(params or {})
    try:
        if name == "mean":
            _no_params(name, params)
            return MeanPredictor()
        if name == "persistence":
            _no_params(name, params)
            return PersistencePredictor()
        if name == "vfdt":
            return NodewiseHoeffdingTree(n_features, TreeConfig(**params))
        if name == "fastodt":
            return FastODT(n_features, TreeConfig(**params))
        if name == "arf_fastodt":
            return ArfEnsemble(n_features, ArfConfig(**params), seed=seed)
        if name == "incubation_boost":
            return IncubationBoost(n_features, IncubationConfig(**params))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad parameters for {name}: {exc}") from exc
    raise ConfigError(f"unknown model {name!r}")


def _no_params(name, params):
    if params:
        raise ConfigError(f"{name} takes no parameters, got {sorted(params)}")
