import math
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .corp import ScoreDecomposition
from ..exceptions import DataError, ScoringError
from ..scoring.rules import ScoringRule

logger = logging.getLogger(__name__)

UNC_TOLERANCE = 1e-12


@dataclass(frozen=True)
class McbDscPoint:
    name: str
    mcb: float
    dsc: float
    mean: float
    margin: bool

    def to_json(self) -> dict:
        payload = {
            "name": self.name,
            "mcb": "inf" if math.isinf(self.mcb) else self.mcb,
            "dsc": self.dsc,
            "mean": "inf" if math.isinf(self.mean) else self.mean,
        }
        if self.margin:
            payload["margin"] = True
        return payload


@dataclass(frozen=True)
class McbDscPlot:
    """
        Points (MCB, DSC) with iso-score lines DSC = MCB + UNC - level.
        Points on the diagonal DSC = MCB score like the best constant forecast;
        points above it beat that baseline.
    """
    rule: ScoringRule
    unc: float
    points: Tuple[McbDscPoint, ...]
    contour_levels: Tuple[float, ...]

    @property
    def contour_labels(self) -> List[str]:
        return [f"{level:.3f}" for level in self.contour_levels]

    def contour_intercepts(self) -> List[float]:
        """DSC value of each iso-score line at MCB = 0"""
        return [self.unc - level for level in self.contour_levels]

    def to_json(self) -> dict:
        return {
            "score": self.rule.name,
            "unc": self.unc,
            "points": [p.to_json() for p in self.points],
            "contours": [
                {"level": level, "label": label, "intercept": self.unc - level}
                for level, label in zip(self.contour_levels, self.contour_labels)
            ],
            "baseline": {"origin": [0.0, 0.0], "diagonal": {"slope": 1.0, "intercept": 0.0, "mean": self.unc}},
        }


def _contour_levels(means: Sequence[float], count: int) -> Tuple[float, ...]:
    finite = [m for m in means if math.isfinite(m)]
    if not finite:
        return ()
    lo, hi = min(finite), max(finite)
    if hi == lo:
        return (lo,)
    return tuple(float(v) for v in np.linspace(lo, hi, count))


def mcb_dsc_plot(decomps: Sequence[ScoreDecomposition], contours: int = 5) -> McbDscPlot:
    if not decomps:
        raise DataError("MCB-DSC plot needs at least one decomposition")
    rule = decomps[0].rule
    if any(d.rule != rule for d in decomps):
        raise ScoringError("MCB-DSC plot needs all decompositions under the same scoring rule")
    unc = decomps[0].unc
    for d in decomps:
        if abs(d.unc - unc) > UNC_TOLERANCE:
            raise DataError(
                f"'{d.name}' has UNC {d.unc!r}, expected {unc!r}: decompositions must share one outcome set"
            )

    points = tuple(
        McbDscPoint(name=d.name, mcb=float(d.mcb), dsc=d.dsc, mean=float(d.mean), margin=d.mcb.is_infinite)
        for d in decomps
    )
    margin = sum(p.margin for p in points)
    if margin:
        logger.info(f"{margin} forecast(s) with infinite MCB placed on the right margin")

    return McbDscPlot(
        rule=rule,
        unc=unc,
        points=points,
        contour_levels=_contour_levels([p.mean for p in points], contours),
    )


def rank_forecasters(
    decomps: Sequence[ScoreDecomposition],
    by: str = "mean",
    top: Optional[int] = None,
) -> List[ScoreDecomposition]:
    """
        Order decompositions by mean score (ascending), DSC (descending)
        or MCB (ascending); ties keep the input order.
    """
    keys = {
        "mean": lambda d: float(d.mean),
        "dsc": lambda d: -d.dsc,
        "mcb": lambda d: float(d.mcb),
    }
    if by not in keys:
        raise DataError(f"unknown ranking key '{by}' (expected mean, dsc or mcb)")
    ranked = sorted(decomps, key=keys[by])
    return ranked if top is None else ranked[:top]
