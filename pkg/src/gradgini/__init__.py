"""Gini index of power-rank income models and the inverse "graduation" map."""

__version__ = "0.1.0"

from .distributions import DistributionSpec, gini_of, match_to_gini, sample
from .estimators import (
    GroupedData,
    LorenzCurve,
    gini_from_lorenz,
    gini_sorted,
    grouped_gini_bounds,
    lorenz_curve,
    mean_difference_pairwise,
)
from .model import PowerModel, asymptotic_gini, classify, exact_gini, gini_numeric, graduate
from .rational import bernoulli, faulhaber_sum

__all__ = [
    "DistributionSpec",
    "GroupedData",
    "LorenzCurve",
    "PowerModel",
    "asymptotic_gini",
    "bernoulli",
    "classify",
    "exact_gini",
    "faulhaber_sum",
    "gini_from_lorenz",
    "gini_numeric",
    "gini_of",
    "gini_sorted",
    "graduate",
    "grouped_gini_bounds",
    "lorenz_curve",
    "match_to_gini",
    "mean_difference_pairwise",
    "sample",
]
