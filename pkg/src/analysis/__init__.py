from .piecewise import PiecewiseFunction, Dominance, count_sign_changes, dominance, zero_function
from .crossings import (
    CrossingReport,
    murphy_difference,
    roc_difference,
    cdf_difference,
    integrated_cdf_difference,
    sharper,
    crossing_report,
)

__all__ = [
    "PiecewiseFunction",
    "Dominance",
    "count_sign_changes",
    "dominance",
    "zero_function",
    "CrossingReport",
    "murphy_difference",
    "roc_difference",
    "cdf_difference",
    "integrated_cdf_difference",
    "sharper",
    "crossing_report",
]
