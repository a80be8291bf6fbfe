import math
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..data.models import ForecastRecord
from ..exceptions import DataError, DegenerateOutcomesError
from ..pav.calibration import recalibrate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RocCurve:
    """
        ROC polyline from (0, 0) to (1, 1).

        Vertex k is (FAR(t_k), HR(t_k)) for the rule "x > t_k predicts an event",
        with t_k the distinct forecast values in decreasing order and a final
        threshold of -inf.
    """
    far: np.ndarray
    hr: np.ndarray
    thresholds: np.ndarray
    concave: bool
    auc: float
    name: str = "forecast"

    @property
    def vertices(self) -> List[Tuple[float, float]]:
        return list(zip(self.far.tolist(), self.hr.tolist()))

    def is_concave(self, tol: float = 1e-12) -> bool:
        """No vertex lies below the chord of its neighbours"""
        for k in range(1, self.far.size - 1):
            x0, y0 = self.far[k - 1], self.hr[k - 1]
            x1, y1 = self.far[k], self.hr[k]
            x2, y2 = self.far[k + 1], self.hr[k + 1]
            if (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0) > tol:
                return False
        return True

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "concave": self.concave,
            "auc": self.auc,
            "far": self.far.tolist(),
            "hr": self.hr.tolist(),
            "thresholds": [None if math.isinf(t) else float(t) for t in self.thresholds],
        }


def roc_from_json(payload: dict) -> RocCurve:
    try:
        far = np.asarray(payload["far"], dtype=float)
        hr = np.asarray(payload["hr"], dtype=float)
        thresholds = np.array([-math.inf if t is None else float(t) for t in payload["thresholds"]])
        concave = bool(payload["concave"])
    except (KeyError, TypeError, ValueError) as e:
        raise DataError(f"invalid ROC JSON: {e}") from e
    if not (far.size == hr.size == thresholds.size) or far.size < 2:
        raise DataError("invalid ROC JSON: vertex and threshold arrays disagree")
    return RocCurve(
        far=far,
        hr=hr,
        thresholds=thresholds,
        concave=concave,
        auc=_trapezoid(far, hr),
        name=payload.get("name", "forecast"),
    )


def _trapezoid(far: np.ndarray, hr: np.ndarray) -> float:
    return float(np.sum(np.diff(far) * (hr[1:] + hr[:-1])) / 2.0)


def _class_counts(record: ForecastRecord) -> Tuple[int, int]:
    n1 = int(np.count_nonzero(record.y == 1))
    n0 = record.n - n1
    if n0 == 0 or n1 == 0:
        raise DegenerateOutcomesError(f"record '{record.name}' needs both outcome classes for ROC analysis")
    return n0, n1


def roc_curve(record: ForecastRecord, concave: bool = False) -> RocCurve:
    n0, n1 = _class_counts(record)
    x = record.x
    y = record.y

    support, idx = np.unique(x, return_inverse=True)
    ones = np.bincount(idx[y == 1], minlength=support.size)[::-1]
    zeros = np.bincount(idx[y == 0], minlength=support.size)[::-1]

    hr = np.concatenate(([0], np.cumsum(ones))) / n1
    far = np.concatenate(([0], np.cumsum(zeros))) / n0
    thresholds = np.concatenate((support[::-1], [-math.inf]))

    return RocCurve(
        far=far,
        hr=hr,
        thresholds=thresholds,
        concave=concave,
        auc=_trapezoid(far, hr),
        name=record.name,
    )


def concave_roc(record: ForecastRecord) -> RocCurve:
    """ROC curve of the PAV-recalibrated forecasts, the concave hull of the raw curve"""
    _class_counts(record)
    return roc_curve(recalibrate(record), concave=True)


def auc(curve: RocCurve) -> float:
    """Trapezoidal area under the ROC polyline"""
    return _trapezoid(curve.far, curve.hr)


def pairwise_auc(record: ForecastRecord) -> float:
    """P(X_event > X_non-event) + P(X_event = X_non-event) / 2 over all pairs"""
    n0, n1 = _class_counts(record)
    x0 = np.sort(record.x[record.y == 0])
    x1 = record.x[record.y == 1]
    below = np.searchsorted(x0, x1, side="left")
    at_or_below = np.searchsorted(x0, x1, side="right")
    numerator = int(np.sum(below + at_or_below))
    return numerator / (2 * n0 * n1)
