"""Online oblivious regression trees (FastODT) and the ensembles built on them."""

from .arf import ArfConfig, ArfEnsemble
from .baselines import MeanPredictor, NodewiseHoeffdingTree, PersistencePredictor
from .datagen import FriedmanConfig, friedman_stream
from .incubation import IncubationBoost, IncubationConfig
from .split_stats import (
    AdaptiveHistogram,
    NodeStats,
    SplitCandidate,
    compute_best_split,
    hoeffding_epsilon,
    should_split,
)
from .stream import ResidualTransform, Sample
from .tree import FastODT, SplitRule, TreeConfig

__all__ = [
    "AdaptiveHistogram",
    "ArfConfig",
    "ArfEnsemble",
    "FastODT",
    "FriedmanConfig",
    "IncubationBoost",
    "IncubationConfig",
    "MeanPredictor",
    "NodeStats",
    "NodewiseHoeffdingTree",
    "PersistencePredictor",
    "ResidualTransform",
    "Sample",
    "SplitCandidate",
    "SplitRule",
    "TreeConfig",
    "compute_best_split",
    "friedman_stream",
    "hoeffding_epsilon",
    "should_split",
]
