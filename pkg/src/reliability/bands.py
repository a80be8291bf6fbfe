import time
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..exceptions import DataError
from ..pav.calibration import pool_adjacent_violators
from ..rng import BAND_STREAM, stream_generator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConsistencyBand:
    """
        Pointwise quantiles of PAV curves refitted on outcomes resampled
        under calibration (y* ~ Bernoulli(x)), at each distinct forecast value.
    """
    level: float
    replicates: int
    seed: int
    forecasts: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    pointwise: bool = True

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "replicates": self.replicates,
            "seed": self.seed,
            "pointwise": self.pointwise,
            "x": self.forecasts.tolist(),
            "lower": self.lower.tolist(),
            "upper": self.upper.tolist(),
        }


def _resampled_curve(support: np.ndarray, counts: np.ndarray, generator: np.random.Generator) -> np.ndarray:
    events = generator.binomial(counts, support)
    curve = np.empty(support.size, dtype=float)
    for first, last, s, w in pool_adjacent_violators(events.tolist(), counts.tolist()):
        curve[first:last] = s / w
    return curve


def _band_chunk(support: np.ndarray, counts: np.ndarray, seed: int, indices: Sequence[int]) -> np.ndarray:
    return np.vstack([
        _resampled_curve(support, counts, stream_generator(seed, BAND_STREAM, int(b)))
        for b in indices
    ])


def consistency_band(
    forecasts: Sequence[float],
    level: float = 0.9,
    replicates: int = 1000,
    seed: int = 42,
    workers: int = 1,
) -> ConsistencyBand:
    """
        Monte Carlo consistency band around the diagonal of a reliability diagram.

        Quantiles are type-1 empirical quantiles at (1 - level)/2 and (1 + level)/2.
        Replicate b always draws from the stream keyed by (seed, b), so the band
        is identical for any number of workers.
    """
    if not 0.0 < level < 1.0:
        raise DataError(f"band level must lie in (0,1), got {level}")
    if replicates < 1:
        raise DataError(f"replicates must be at least 1, got {replicates}")
    x = np.asarray(forecasts, dtype=float)
    if x.size == 0:
        raise DataError("consistency band of an empty forecast list")
    if np.any((x < 0.0) | (x > 1.0)) or np.any(np.isnan(x)):
        raise DataError("forecasts must lie in [0,1]")

    support, counts = np.unique(x, return_counts=True)
    start_time = time.time()

    if workers > 1 and replicates > 1:
        chunks = np.array_split(np.arange(replicates), min(workers, replicates))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_band_chunk, [support] * len(chunks), [counts] * len(chunks), [seed] * len(chunks), chunks))
        curves = np.vstack(parts)
    else:
        curves = _band_chunk(support, counts, seed, range(replicates))

    lower = np.quantile(curves, (1.0 - level) / 2.0, axis=0, method="inverted_cdf")
    upper = np.quantile(curves, (1.0 + level) / 2.0, axis=0, method="inverted_cdf")

    logger.info(
        f"Consistency band: {replicates} replicates over {support.size} distinct values "
        f"in {time.time() - start_time:.2f}s (workers={workers})"
    )
    return ConsistencyBand(
        level=level,
        replicates=replicates,
        seed=seed,
        forecasts=support,
        lower=np.asarray(lower, dtype=float),
        upper=np.asarray(upper, dtype=float),
    )


def band_from_json(payload: dict) -> ConsistencyBand:
    """Rebuild a band emitted by ConsistencyBand.to_json"""
    try:
        band = ConsistencyBand(
            level=float(payload["level"]),
            replicates=int(payload["replicates"]),
            seed=int(payload["seed"]),
            forecasts=np.asarray(payload["x"], dtype=float),
            lower=np.asarray(payload["lower"], dtype=float),
            upper=np.asarray(payload["upper"], dtype=float),
            pointwise=bool(payload.get("pointwise", True)),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise DataError(f"invalid consistency band JSON: {e}") from e
    if not band.forecasts.size == band.lower.size == band.upper.size:
        raise DataError("invalid consistency band JSON: x, lower and upper lengths disagree")
    return band
