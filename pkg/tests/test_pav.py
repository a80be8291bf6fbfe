import itertools

import numpy as np
import pytest

from src.data import ForecastRecord
from src.exceptions import DataError
from src.pav import apply_recalibration, pav_calibrate, pool_adjacent_violators, recalibrate
from src.scoring import ScoringRule, mean_score

from conftest import FORECAST_GRID


def isotonic_block_fits(x, y):
    """
        Every nondecreasing fit that pools consecutive distinct forecast values into
        blocks and assigns each block its event frequency, in the original row order.
    """
    support = np.unique(x)
    sums = np.array([y[x == v].sum() for v in support], dtype=float)
    counts = np.array([np.count_nonzero(x == v) for v in support], dtype=float)
    k = support.size
    for cuts in itertools.product([False, True], repeat=k - 1):
        bounds = [0] + [i + 1 for i, cut in enumerate(cuts) if cut] + [k]
        means = [sums[a:b].sum() / counts[a:b].sum() for a, b in zip(bounds[:-1], bounds[1:])]
        if any(m2 < m1 for m1, m2 in zip(means[:-1], means[1:])):
            continue
        per_value = np.concatenate([np.full(b - a, m) for a, b, m in zip(bounds[:-1], bounds[1:], means)])
        lookup = dict(zip(support.tolist(), per_value.tolist()))
        yield np.array([lookup[v] for v in x.tolist()])


def brute_force_isotonic(x, y):
    """Least-squares nondecreasing fit by enumerating every split into consecutive blocks"""
    best, best_fit = np.inf, None
    for fitted in isotonic_block_fits(x, y):
        sse = float(np.sum((y - fitted) ** 2))
        if sse < best - 1e-12:
            best, best_fit = sse, fitted
    return best_fit


@pytest.mark.parametrize("x, y, expected", [
    ([0.1, 0.3, 0.6, 0.9], [0, 0, 1, 1], [0.0, 0.0, 1.0, 1.0]),
    ([0.1, 0.4, 0.6, 0.8], [0, 1, 0, 1], [0.0, 0.5, 0.5, 1.0]),
    ([0.5, 0.5], [1, 0], [0.5, 0.5]),
    ([0.9, 0.1], [0, 1], [0.5, 0.5]),
])
def test_examples(x, y, expected):
    calibrated = recalibrate(ForecastRecord.create(x, y))
    assert calibrated.forecasts == expected


def test_matches_brute_force(record_factory):
    for trial in range(60):
        n = 3 + trial % 10
        grid = FORECAST_GRID if trial % 2 else None
        record = record_factory(n, grid=grid, both_classes=False)
        expected = brute_force_isotonic(record.x, record.y)
        np.testing.assert_allclose(recalibrate(record).x, expected, atol=1e-12)


@pytest.mark.slow
def test_matches_brute_force_full(record_factory):
    for trial in range(1000):
        n = 1 + trial % 12
        record = record_factory(n, grid=FORECAST_GRID if trial % 2 else None, both_classes=False)
        np.testing.assert_array_equal(recalibrate(record).x, brute_force_isotonic(record.x, record.y))


@pytest.mark.parametrize("rule", [
    ScoringRule.brier(),
    ScoringRule.log(),
    ScoringRule.zero_one(),
    ScoringRule.elementary(0.3),
    ScoringRule.elementary(0.8),
    ScoringRule.beta_family(2.0, 3.0),
], ids=lambda r: r.name)
def test_optimal_for_proper_scores(rule, record_factory):
    # no other isotonic block fit has a smaller mean score
    for trial in range(40):
        record = record_factory(3 + trial % 6, grid=FORECAST_GRID if trial % 2 else None, both_classes=False)
        best = float(mean_score(rule, recalibrate(record)))
        for fitted in isotonic_block_fits(record.x, record.y):
            assert best <= float(mean_score(rule, record.with_forecasts(fitted))) + 1e-12


def test_properties(record_factory):
    for _ in range(30):
        record = record_factory(40, grid=FORECAST_GRID)
        fit = pav_calibrate(record)
        # nondecreasing in the forecast order, ties share one value
        assert np.all(np.diff(fit.recalibrated) >= 0)
        for v in np.unique(record.x):
            assert np.unique(fit.in_original_order()[record.x == v]).size == 1
        # block means are exact and strictly increasing
        values = fit.block_values
        assert np.all(np.diff(values) > 0)
        assert sum(b.weight for b in fit.blocks) == record.n
        for block in fit.blocks:
            assert block.value == block.events / block.weight
        # calibration in the large
        assert np.isclose(fit.recalibrated.mean(), record.y.mean(), atol=1e-12)


def test_idempotent(record_factory):
    record = record_factory(50)
    once = recalibrate(record)
    assert recalibrate(once).forecasts == once.forecasts


def test_pool_adjacent_violators_blocks():
    assert pool_adjacent_violators([0, 1, 0, 1], [1, 1, 1, 1]) == [(0, 1, 0, 1), (1, 3, 1, 2), (3, 4, 1, 1)]
    # equal means are pooled
    assert pool_adjacent_violators([1, 1], [2, 2]) == [(0, 2, 2, 4)]


def test_distinct_points():
    fit = pav_calibrate(ForecastRecord.create([0.4, 0.1, 0.4, 0.8], [1, 0, 0, 1]))
    support, values = fit.distinct_points()
    assert support.tolist() == [0.1, 0.4, 0.8]
    assert values.tolist() == [0.0, 0.5, 1.0]


def test_apply_recalibration_mismatch():
    fit = pav_calibrate(ForecastRecord.create([0.1, 0.9], [0, 1]))
    with pytest.raises(DataError):
        apply_recalibration(fit, ForecastRecord.create([0.1, 0.5, 0.9], [0, 1, 1]))
    with pytest.raises(DataError):
        apply_recalibration(fit, ForecastRecord.create([0.2, 0.9], [0, 1]))
