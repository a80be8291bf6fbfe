import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..data.models import ForecastRecord
from ..exceptions import DataError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CalibrationBlock:
    """Rows start..stop-1 (in sorted order) pooled to one recalibrated value"""
    start: int
    stop: int
    value: float
    weight: int
    events: int

    def to_json(self) -> dict:
        return {
            "start": self.start,
            "stop": self.stop,
            "value": self.value,
            "weight": self.weight,
            "events": self.events,
        }


@dataclass(frozen=True)
class CalibrationFit:
    """
        PAV fit of the outcomes on the forecast values.

        sorted_forecasts and recalibrated are in (stable) sorted order;
        permutation[i] is the original row of the i-th sorted row.
    """
    sorted_forecasts: np.ndarray
    recalibrated: np.ndarray
    blocks: Tuple[CalibrationBlock, ...]
    permutation: np.ndarray

    @property
    def n(self) -> int:
        return int(self.sorted_forecasts.size)

    @property
    def block_values(self) -> np.ndarray:
        return np.array([b.value for b in self.blocks])

    def in_original_order(self) -> np.ndarray:
        values = np.empty_like(self.recalibrated)
        values[self.permutation] = self.recalibrated
        return values

    def distinct_points(self) -> Tuple[np.ndarray, np.ndarray]:
        """Distinct forecast values and their recalibrated values"""
        support, first = np.unique(self.sorted_forecasts, return_index=True)
        return support, self.recalibrated[first]


def pool_adjacent_violators(sums: Sequence[int], weights: Sequence[int]) -> List[Tuple[int, int, int, int]]:
    """
        Weighted PAV on pre-pooled points with integer event sums and weights.

        Returns blocks as (first point, last point + 1, event sum, weight) with
        strictly increasing means. Means are compared by cross-multiplication,
        so pooling decisions are exact.
    """
    stack: List[List[int]] = []
    for i, (s, w) in enumerate(zip(sums, weights)):
        start, cur_s, cur_w = i, s, w
        # pool while the previous block's mean is not below the current one
        while stack and stack[-1][2] * cur_w >= cur_s * stack[-1][3]:
            start, _, prev_s, prev_w = stack.pop()
            cur_s += prev_s
            cur_w += prev_w
        stack.append([start, i + 1, cur_s, cur_w])
    return [tuple(b) for b in stack]


def pav_calibrate(record: ForecastRecord) -> CalibrationFit:
    """Isotonic least-squares fit of the outcomes on the forecasts, ties pooled first"""
    x = record.x
    y = record.y
    permutation = np.argsort(x, kind="stable")
    sorted_x = x[permutation]
    sorted_y = y[permutation]

    _, starts, counts = np.unique(sorted_x, return_index=True, return_counts=True)
    sums = np.add.reduceat(sorted_y, starts)

    point_blocks = pool_adjacent_violators(sums.tolist(), counts.tolist())

    row_bounds = np.append(starts, sorted_x.size)
    blocks = []
    recalibrated = np.empty(sorted_x.size, dtype=float)
    for first, last, s, w in point_blocks:
        start, stop = int(row_bounds[first]), int(row_bounds[last])
        value = s / w
        recalibrated[start:stop] = value
        blocks.append(CalibrationBlock(start=start, stop=stop, value=value, weight=w, events=s))

    logger.debug(f"PAV on {record.name}: {record.n} rows, {len(starts)} distinct values, {len(blocks)} blocks")
    return CalibrationFit(
        sorted_forecasts=sorted_x,
        recalibrated=recalibrated,
        blocks=tuple(blocks),
        permutation=permutation,
    )


def apply_recalibration(fit: CalibrationFit, record: ForecastRecord) -> ForecastRecord:
    """Replace the forecasts by their recalibrated values, in the original row order"""
    if fit.n != record.n:
        raise DataError(f"fit has {fit.n} rows, record '{record.name}' has {record.n}")
    if not np.array_equal(fit.sorted_forecasts, record.x[fit.permutation]):
        raise DataError(f"fit was not produced from record '{record.name}'")
    return record.with_forecasts(fit.in_original_order())


def recalibrate(record: ForecastRecord) -> ForecastRecord:
    return apply_recalibration(pav_calibrate(record), record)
