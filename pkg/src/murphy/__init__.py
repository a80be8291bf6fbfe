from .curve import (
    MurphyCurve,
    murphy_curve,
    murphy_curve_from_json,
    murphy_value,
    murphy_grid,
    murphy_area,
    weighted_murphy_area,
)

__all__ = [
    "MurphyCurve",
    "murphy_curve",
    "murphy_curve_from_json",
    "murphy_value",
    "murphy_grid",
    "murphy_area",
    "weighted_murphy_area",
]
