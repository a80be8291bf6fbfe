import math
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import numpy as np

from ..data.models import ForecastRecord
from ..exceptions import DataError, ScoringError
from ..scoring.extended import ExtendedReal
from ..scoring.rules import MixingDensity, ScoringRule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MurphyCurve:
    """
        Mean elementary score theta -> S_theta as an exact piecewise-linear function.

        Segment j covers the open interval (knots[j], knots[j+1]) where the mean
        score is (2 theta A_j + 2 (1 - theta) B_j) / n, with A_j false alarms
        (x > theta, y = 0) and B_j missed events (x < theta, y = 1).
        knot_values holds the exact mean score at the interior knots, tie term included.
    """
    knots: np.ndarray
    false_alarms: np.ndarray
    misses: np.ndarray
    knot_values: np.ndarray
    n: int
    name: str = "forecast"

    @property
    def lo(self) -> np.ndarray:
        return self.knots[:-1]

    @property
    def hi(self) -> np.ndarray:
        return self.knots[1:]

    @property
    def a(self) -> np.ndarray:
        return 2.0 * self.misses / self.n

    @property
    def b(self) -> np.ndarray:
        return 2.0 * (self.false_alarms - self.misses) / self.n

    @property
    def interior_knots(self) -> np.ndarray:
        return self.knots[1:-1]

    def segment_values(self, segment: np.ndarray, theta: np.ndarray) -> np.ndarray:
        return (2.0 * theta * self.false_alarms[segment] + 2.0 * (1.0 - theta) * self.misses[segment]) / self.n

    def marked_knots(self) -> List[Tuple[float, float]]:
        """Knots whose exact value differs from both one-sided limits"""
        marked = []
        for j, theta in enumerate(self.interior_knots):
            left = float(self.segment_values(np.array([j]), np.array([theta]))[0])
            right = float(self.segment_values(np.array([j + 1]), np.array([theta]))[0])
            value = float(self.knot_values[j])
            if value != left and value != right:
                marked.append((float(theta), value))
        return marked

    def polyline(self) -> List[Tuple[float, float]]:
        """Vertices of the segment polyline, one-sided limits at each knot"""
        idx = np.arange(self.knots.size - 1)
        left = self.segment_values(idx, self.lo)
        right = self.segment_values(idx, self.hi)
        points = []
        for j in idx:
            points.append((float(self.lo[j]), float(left[j])))
            points.append((float(self.hi[j]), float(right[j])))
        return points

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "knots": self.knots.tolist(),
            "segments": [
                {
                    "lo": float(lo), "hi": float(hi), "a": float(a), "b": float(b),
                    "false_alarms": int(fa), "misses": int(m),
                }
                for lo, hi, a, b, fa, m in zip(self.lo, self.hi, self.a, self.b, self.false_alarms, self.misses)
            ],
            "knot_values": self.knot_values.tolist(),
        }


def murphy_curve_from_json(payload: dict) -> MurphyCurve:
    """Rebuild a curve emitted by MurphyCurve.to_json"""
    try:
        knots = np.asarray(payload["knots"], dtype=float)
        segments = payload["segments"]
        curve = MurphyCurve(
            knots=knots,
            false_alarms=np.array([s["false_alarms"] for s in segments], dtype=np.int64),
            misses=np.array([s["misses"] for s in segments], dtype=np.int64),
            knot_values=np.asarray(payload["knot_values"], dtype=float),
            n=int(payload["n"]),
            name=payload.get("name", "forecast"),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise DataError(f"invalid Murphy curve JSON: {e}") from e
    if curve.false_alarms.size != knots.size - 1 or curve.knot_values.size != max(knots.size - 2, 0):
        raise DataError("invalid Murphy curve JSON: segment and knot counts disagree")
    return curve


def murphy_curve(record: ForecastRecord) -> MurphyCurve:
    x = record.x
    y = record.y

    knots = np.union1d(np.unique(x), [0.0, 1.0])
    idx = np.searchsorted(knots, x)
    zeros_at = np.bincount(idx[y == 0], minlength=knots.size)
    ones_at = np.bincount(idx[y == 1], minlength=knots.size)

    # events with x <= knots[j]; non-events with x >= knots[j]
    ones_le = np.cumsum(ones_at)
    zeros_ge = np.cumsum(zeros_at[::-1])[::-1]

    false_alarms = zeros_ge[1:]
    misses = ones_le[:-1]

    interior = knots[1:-1]
    fa_at = zeros_ge[2:]
    miss_at = ones_le[:-2]
    ties = zeros_at[1:-1] + ones_at[1:-1]
    knot_values = (
        2.0 * interior * fa_at + 2.0 * (1.0 - interior) * miss_at + 2.0 * interior * (1.0 - interior) * ties
    ) / record.n

    return MurphyCurve(
        knots=knots,
        false_alarms=false_alarms.astype(np.int64),
        misses=misses.astype(np.int64),
        knot_values=knot_values,
        n=record.n,
        name=record.name,
    )


def murphy_grid(curve: MurphyCurve, thetas) -> np.ndarray:
    """Vectorized murphy_value over thetas in (0, 1)"""
    t = np.asarray(thetas, dtype=float)
    if np.any((t <= 0.0) | (t >= 1.0)) or np.any(np.isnan(t)):
        raise ScoringError("theta must lie in (0,1)")
    pos = np.searchsorted(curve.knots, t)
    on_knot = curve.knots[np.minimum(pos, curve.knots.size - 1)] == t
    segment = np.where(on_knot, 0, pos - 1)
    values = curve.segment_values(segment, t)
    if curve.knot_values.size:
        knot_idx = np.clip(pos - 1, 0, curve.knot_values.size - 1)
        values = np.where(on_knot, curve.knot_values[knot_idx], values)
    return values


def murphy_value(curve: MurphyCurve, theta: float) -> float:
    """Mean elementary score at theta: exact knot value on a knot, segment value elsewhere"""
    return float(murphy_grid(curve, np.array([theta]))[0])


def murphy_area(curve: MurphyCurve) -> float:
    """Area under the curve on (0, 1); equals the mean Brier score"""
    return float(weighted_murphy_area(curve, MixingDensity(kind="uniform")))


def weighted_murphy_area(curve: MurphyCurve, density: Union[MixingDensity, ScoringRule]) -> ExtendedReal:
    """
        Integral of S_theta h(theta) over (0, 1), evaluated exactly segment by segment.
        Equals the mean score of the rule with mixing density h; +inf when divergent.
    """
    if isinstance(density, ScoringRule):
        if density.density is None:
            raise ScoringError(f"{density.name} has no mixing density")
        density = density.density

    total = 0.0
    for lo, hi, a, b in zip(curve.lo, curve.hi, curve.a, curve.b):
        total += density.affine_integral(float(lo), float(hi), float(a), float(b))
        if math.isinf(total):
            logger.debug(f"{curve.name}: weighted area diverges on ({lo}, {hi})")
            return ExtendedReal(math.inf)
    return ExtendedReal(total)
