from .extended import ExtendedReal, INFINITY
from .rules import ScoringRule, MixingDensity, parse_rule
from .scores import (
    score,
    score_array,
    elementary_score,
    mean_score,
    savage_phi,
    savage_subgradient,
    savage_score,
    mixture_score,
)

__all__ = [
    "ExtendedReal",
    "INFINITY",
    "ScoringRule",
    "MixingDensity",
    "parse_rule",
    "score",
    "score_array",
    "elementary_score",
    "mean_score",
    "savage_phi",
    "savage_subgradient",
    "savage_score",
    "mixture_score",
]
