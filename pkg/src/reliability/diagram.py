import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .bands import ConsistencyBand, band_from_json
from ..data.models import ForecastRecord
from ..exceptions import DataError
from ..pav.calibration import pav_calibrate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReliabilityBin:
    """A horizontal segment of the CORP curve read as a bin"""
    lo: float
    hi: float
    cep: float
    count: int
    events: int

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "cep": self.cep, "count": self.count, "events": self.events}


@dataclass(frozen=True)
class ReliabilityDiagram:
    """
        CORP reliability diagram: the PAV curve through (x, x_hat) at the distinct
        forecast values, its bins, a histogram of the forecasts and an optional band.
    """
    name: str
    forecasts: np.ndarray
    cep: np.ndarray
    bins: Tuple[ReliabilityBin, ...]
    histogram_counts: np.ndarray
    histogram_edges: np.ndarray
    band: Optional[ConsistencyBand] = None

    @property
    def curve_points(self) -> List[Tuple[float, float]]:
        return list(zip(self.forecasts.tolist(), self.cep.tolist()))

    def support_range(self) -> Tuple[float, float]:
        """Smallest interval containing the forecast support"""
        return float(self.forecasts[0]), float(self.forecasts[-1])

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "points": [{"x": x, "cep": c} for x, c in self.curve_points],
            "bins": [b.to_json() for b in self.bins],
            "histogram": {"edges": self.histogram_edges.tolist(), "counts": self.histogram_counts.tolist()},
            "support_range": list(self.support_range()),
            "band": self.band.to_json() if self.band is not None else None,
        }


def reliability_from_json(payload: dict) -> ReliabilityDiagram:
    """Rebuild a diagram emitted by ReliabilityDiagram.to_json"""
    try:
        points = payload["points"]
        histogram = payload["histogram"]
        diagram = ReliabilityDiagram(
            name=payload.get("name", "forecast"),
            forecasts=np.array([p["x"] for p in points], dtype=float),
            cep=np.array([p["cep"] for p in points], dtype=float),
            bins=tuple(
                ReliabilityBin(lo=float(b["lo"]), hi=float(b["hi"]), cep=float(b["cep"]),
                               count=int(b["count"]), events=int(b["events"]))
                for b in payload["bins"]
            ),
            histogram_counts=np.asarray(histogram["counts"], dtype=np.int64),
            histogram_edges=np.asarray(histogram["edges"], dtype=float),
            band=band_from_json(payload["band"]) if payload.get("band") is not None else None,
        )
    except (KeyError, TypeError, ValueError) as e:
        raise DataError(f"invalid reliability diagram JSON: {e}") from e
    if diagram.forecasts.size == 0 or diagram.histogram_edges.size != diagram.histogram_counts.size + 1:
        raise DataError("invalid reliability diagram JSON: empty curve or histogram edges and counts disagree")
    return diagram


def reliability_curve(
    record: ForecastRecord,
    histogram_bins: int = 10,
    band: Optional[ConsistencyBand] = None,
) -> ReliabilityDiagram:
    fit = pav_calibrate(record)
    forecasts, cep = fit.distinct_points()

    bins = tuple(
        ReliabilityBin(
            lo=float(fit.sorted_forecasts[block.start]),
            hi=float(fit.sorted_forecasts[block.stop - 1]),
            cep=block.value,
            count=block.weight,
            events=block.events,
        )
        for block in fit.blocks
    )
    counts, edges = np.histogram(record.x, bins=histogram_bins, range=(0.0, 1.0))

    logger.debug(f"Reliability curve for {record.name}: {forecasts.size} points, {len(bins)} bins")
    return ReliabilityDiagram(
        name=record.name,
        forecasts=forecasts,
        cep=cep,
        bins=bins,
        histogram_counts=counts,
        histogram_edges=edges,
        band=band,
    )
