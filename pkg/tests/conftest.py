import numpy as np
import pytest

from src.data import ForecastRecord, parse_csv

# Small wide-format table with one missing cell in row 3
FLARE_CSV = """y,NOAA,SIDC,ASSA
1,0.7,0.8,1.0
0,0.2,0.1,0.0
1,0.6,,0.5
0,0.4,0.3,0.3
1,0.9,0.6,0.0
0,0.1,0.2,0.2
"""

FORECAST_GRID = np.round(np.linspace(0.0, 1.0, 11), 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def flare_dataset():
    return parse_csv(FLARE_CSV)


@pytest.fixture
def flare_file(tmp_path):
    path = tmp_path / "flares.csv"
    path.write_text(FLARE_CSV, encoding="utf-8")
    return path


def make_record(rng, n, name="forecast", grid=None, both_classes=True):
    """Random record; forecasts drawn from grid (ties likely) or uniform on [0,1]"""
    while True:
        x = rng.choice(grid, size=n) if grid is not None else rng.random(n)
        y = (rng.random(n) < x).astype(int)
        if not both_classes or 0 < y.sum() < n:
            return ForecastRecord.create(x, y, name)


def make_pair(rng, n, grid=None):
    """Two forecasters on the same outcomes with both classes present"""
    while True:
        y = rng.integers(0, 2, size=n)
        if 0 < y.sum() < n:
            break
    pair = []
    for name in ("first", "second"):
        x = rng.choice(grid, size=n) if grid is not None else rng.random(n)
        pair.append(ForecastRecord.create(x, y, name))
    return pair


@pytest.fixture
def record_factory(rng):
    def factory(n, name="forecast", grid=None, both_classes=True):
        return make_record(rng, n, name, grid, both_classes)
    return factory


@pytest.fixture
def pair_factory(rng):
    def factory(n, grid=None):
        return make_pair(rng, n, grid)
    return factory
