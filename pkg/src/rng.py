import numpy as np

from .exceptions import DataError

# Independent stream families under one user seed
BAND_STREAM = 0
SIMULATION_STREAM = 1


def stream_generator(seed: int, stream: int, index: int) -> np.random.Generator:
    """
        Counter-based generator for one unit of work (a band replicate or a row block).

        Keyed by (seed, stream, index) only, so results do not depend on which
        worker draws them or in which order.
    """
    if seed < 0:
        raise DataError(f"seed must be a non-negative integer, got {seed}")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream, index))))
