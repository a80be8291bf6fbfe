import time
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Tuple

import numpy as np
from scipy.special import ndtr

from ..data.loader import dataset_to_csv
from ..data.models import Dataset
from ..exceptions import DataError
from ..rng import SIMULATION_STREAM, stream_generator

logger = logging.getLogger(__name__)

Scenario = Literal["A", "B", "C"]

BLOCK_SIZE = 65536

SCENARIO_COLUMNS: Dict[str, Tuple[str, ...]] = {
    "A": ("X0", "X1"),
    "B": ("X1", "X2"),
    "C": ("X0", "X1", "X2", "X3"),
}


@dataclass(frozen=True)
class ScenarioSample:
    scenario: str
    n: int
    seed: int
    x0: np.ndarray
    outcomes: np.ndarray
    forecasts: Dict[str, np.ndarray] = field(default_factory=dict)

    def to_dataset(self) -> Dataset:
        return Dataset.create(self.outcomes.tolist(), {name: col.tolist() for name, col in self.forecasts.items()})

    def to_csv(self) -> str:
        return dataset_to_csv(self.to_dataset())


def _scenario_a(x0: np.ndarray) -> Dict[str, np.ndarray]:
    return {"X0": x0, "X1": 3.0 / 8.0 + x0 / 4.0}


def _scenario_b(x0: np.ndarray) -> Dict[str, np.ndarray]:
    low, high = x0 < 0.25, x0 > 0.75
    x1 = np.where(low | high, x0, 0.5)
    x2 = np.where(low, 1.0 / 8.0, np.where(high, 7.0 / 8.0, x0))
    return {"X1": x1, "X2": x2}


def _scenario_c(sources: np.ndarray) -> Dict[str, np.ndarray]:
    # X_j uses the first 4 - j sources, scaled to stay calibrated
    partial = np.cumsum(sources, axis=1)
    return {f"X{j}": ndtr(partial[:, 3 - j] / np.sqrt(j + 1.0)) for j in range(4)}


def _sample_block(scenario: str, seed: int, block: int, size: int) -> Tuple[np.ndarray, np.ndarray, Dict[str, np.ndarray]]:
    generator = stream_generator(seed, SIMULATION_STREAM, block)
    if scenario == "C":
        forecasts = _scenario_c(generator.standard_normal((size, 4)))
        x0 = forecasts["X0"]
    else:
        x0 = generator.random(size)
        forecasts = _scenario_a(x0) if scenario == "A" else _scenario_b(x0)
    outcomes = (generator.random(size) < x0).astype(np.int64)
    return x0, outcomes, forecasts


def sample_scenario(scenario: str, n: int, seed: int = 42, workers: int = 1) -> ScenarioSample:
    """
        Draw n cases of Scenario A, B or C with outcomes Y ~ Bernoulli(X0).

        Rows are generated in blocks of BLOCK_SIZE, block k from the stream keyed
        by (seed, k), so the sample does not depend on the number of workers.
    """
    scenario = scenario.upper()
    if scenario not in SCENARIO_COLUMNS:
        raise DataError(f"unknown scenario '{scenario}' (expected A, B or C)")
    if n < 1:
        raise DataError(f"sample size must be at least 1, got {n}")

    start_time = time.time()
    sizes = [min(BLOCK_SIZE, n - start) for start in range(0, n, BLOCK_SIZE)]
    args = ([scenario] * len(sizes), [seed] * len(sizes), list(range(len(sizes))), sizes)
    if workers > 1 and len(sizes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks: List = list(pool.map(_sample_block, *args))
    else:
        blocks = list(map(_sample_block, *args))

    x0 = np.concatenate([b[0] for b in blocks])
    outcomes = np.concatenate([b[1] for b in blocks])
    forecasts = {name: np.concatenate([b[2][name] for b in blocks]) for name in SCENARIO_COLUMNS[scenario]}

    logger.info(f"Sampled scenario {scenario}: n={n}, seed={seed}, {len(sizes)} block(s) in {time.time() - start_time:.2f}s")
    return ScenarioSample(scenario=scenario, n=n, seed=seed, x0=x0, outcomes=outcomes, forecasts=forecasts)
