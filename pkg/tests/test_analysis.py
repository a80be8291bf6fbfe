import numpy as np
import pytest

from src.analysis import (
    PiecewiseFunction,
    count_sign_changes,
    crossing_report,
    dominance,
    integrated_cdf_difference,
    murphy_difference,
    roc_difference,
    zero_function,
)
from src.data import ForecastRecord, class_priors, empirical_distribution
from src.exceptions import DataError, DegenerateOutcomesError
from src.murphy import murphy_curve, murphy_grid
from src.pav import recalibrate
from src.roc import roc_curve

from conftest import FORECAST_GRID

THETAS = np.linspace(0.01, 0.99, 99)


def line(a, b):
    return PiecewiseFunction(breakpoints=np.array([0.0, 1.0]), a=np.array([a]), b=np.array([b]))


def hat():
    # -0.25 at both ends, 0.25 at t = 0.5
    return PiecewiseFunction(
        breakpoints=np.array([0.0, 0.5, 1.0]), a=np.array([-0.25, 0.75]), b=np.array([1.0, -1.0])
    )


class TestPiecewise:
    def test_sign_changes(self):
        assert count_sign_changes(line(-0.5, 1.0)) == 1
        assert count_sign_changes(zero_function()) == 0
        assert count_sign_changes(hat()) == 2
        assert count_sign_changes(line(0.2, 0.0)) == 0

    def test_tolerance_hides_small_values(self):
        assert count_sign_changes(line(-1e-12, 2e-12), tol=1e-10) == 0
        with pytest.raises(DataError):
            count_sign_changes(hat(), tol=-1.0)

    def test_dominance(self):
        assert dominance(line(0.0, -1.0)) == "first"
        assert dominance(line(0.0, 1.0)) == "second"
        assert dominance(hat()) == "none"
        assert dominance(zero_function()) == "none"

    def test_evaluate_and_integral(self):
        f = hat()
        np.testing.assert_allclose(f([0.0, 0.25, 0.5, 1.0]), [-0.25, 0.0, 0.25, -0.25])
        assert f.integral() == pytest.approx(0.0, abs=1e-15)
        assert line(1.0, 0.0).integral() == 1.0

    def test_shape_checks(self):
        with pytest.raises(DataError):
            PiecewiseFunction(breakpoints=np.array([0.0, 1.0]), a=np.zeros(2), b=np.zeros(2))
        with pytest.raises(DataError):
            PiecewiseFunction(
                breakpoints=np.array([0.0, 1.0]), a=np.zeros(1), b=np.zeros(1), point_values=np.zeros(3)
            )


def test_identical_records_give_zero_differences(record_factory):
    record = record_factory(30, grid=FORECAST_GRID)
    curve = murphy_curve(record)
    mc = murphy_difference(curve, curve)
    roc = roc_difference(record, record)
    assert np.all(mc.sample_values() == 0.0) and np.all(roc.sample_values() == 0.0)
    assert count_sign_changes(mc) == 0 and count_sign_changes(roc) == 0


def test_murphy_difference_matches_grid(pair_factory):
    for trial in range(20):
        first, second = pair_factory(25, grid=FORECAST_GRID if trial % 2 else None)
        c1, c2 = murphy_curve(first), murphy_curve(second)
        diff = murphy_difference(c1, c2)
        expected = (murphy_grid(c1, THETAS) - murphy_grid(c2, THETAS)) / 2.0
        np.testing.assert_allclose(diff(THETAS), expected, atol=1e-12)


def test_murphy_difference_size_mismatch():
    with pytest.raises(DataError):
        murphy_difference(
            murphy_curve(ForecastRecord.create([0.2], [0])),
            murphy_curve(ForecastRecord.create([0.2, 0.4], [0, 1])),
        )


def test_calibrated_murphy_difference_is_integrated_cdf(pair_factory):
    for trial in range(30):
        first, second = (recalibrate(r) for r in pair_factory(20 + trial, grid=FORECAST_GRID if trial % 2 else None))
        mc = murphy_difference(murphy_curve(first), murphy_curve(second))
        gap = integrated_cdf_difference(empirical_distribution(first.forecasts), empirical_distribution(second.forecasts))
        points = np.union1d(np.union1d(mc.breakpoints, gap.breakpoints), THETAS)
        np.testing.assert_allclose(mc(points), gap(points), atol=1e-10)


def test_calibrated_roc_difference_ends_at_zero(pair_factory):
    for _ in range(20):
        first, second = (recalibrate(r) for r in pair_factory(30))
        roc = roc_difference(first, second)
        assert roc(0.0) == 0.0
        assert roc(1.0) == pytest.approx(0.0, abs=1e-12)


def test_perfect_against_climatology():
    y = [0, 0, 1, 1]
    report = crossing_report(ForecastRecord.create([0.0, 0.0, 1.0, 1.0], y, "perfect"), ForecastRecord.create([0.5] * 4, y, "climate"))
    assert report.first == "perfect" and report.second == "climate"
    assert (report.murphy_sign_changes, report.roc_sign_changes) == (0, 0)
    assert report.cdf_sign_changes == 1
    assert (report.murphy_dominates, report.roc_dominates, report.sharper) == ("first", "first", "first")
    assert report.calibrated is True


def test_dominance_agrees_for_calibrated_pairs(pair_factory):
    for trial in range(200):
        first, second = pair_factory(5 + trial % 46, grid=FORECAST_GRID if trial % 2 else None)
        report = crossing_report(first, second)
        assert report.murphy_sign_changes == report.roc_sign_changes
        assert report.murphy_dominates == report.roc_dominates == report.sharper


def test_report_without_recalibration(pair_factory):
    first, second = pair_factory(20)
    report = crossing_report(first, second, recalibrate=False)
    assert report.calibrated is False
    assert report.model_dump()["tolerance"] == 1e-10


def test_report_errors():
    with pytest.raises(DegenerateOutcomesError):
        crossing_report(ForecastRecord.create([0.2, 0.4], [1, 1]), ForecastRecord.create([0.3, 0.5], [1, 1]))
    with pytest.raises(DataError):
        crossing_report(ForecastRecord.create([0.2, 0.4], [0, 1]), ForecastRecord.create([0.3, 0.5], [1, 0]))
    with pytest.raises(DataError):
        roc_difference(ForecastRecord.create([0.2, 0.4], [0, 1]), ForecastRecord.create([0.3, 0.5, 0.6], [0, 1, 1]))


def test_roc_sign_changes_bounded_by_cdf_crossings(pair_factory):
    for trial in range(200):
        first, second = pair_factory(5 + trial % 46, grid=FORECAST_GRID if trial % 2 else None)
        report = crossing_report(first, second)
        if report.cdf_sign_changes == 0:
            assert report.roc_sign_changes == 0
        else:
            assert report.roc_sign_changes <= report.cdf_sign_changes - 1


def indexed_roc_point(curve, priors, c):
    """Point of the ROC curve at which the lowest fraction c of all cases is predicted a non-event"""
    share = priors.pi0 * curve.far + priors.pi1 * curve.hr
    return np.interp(1.0 - c, share, curve.far), np.interp(1.0 - c, share, curve.hr)


def test_roc_difference_matches_geometric_gap(pair_factory):
    for trial in range(200):
        first, second = (recalibrate(r) for r in pair_factory(5 + trial % 46, grid=FORECAST_GRID if trial % 2 else None))
        priors = class_priors(first.outcomes)
        c1, c2 = roc_curve(first), roc_curve(second)
        gap = roc_difference(first, second)
        index = np.union1d(np.arange(first.n + 1) / first.n, THETAS)
        far1, hr1 = indexed_roc_point(c1, priors, index)
        far2, hr2 = indexed_roc_point(c2, priors, index)
        # the gap vector is D(c) times (1/pi0, -1/pi1)
        np.testing.assert_allclose(priors.pi0 * (far1 - far2), gap(index), atol=1e-10)
        np.testing.assert_allclose(-priors.pi1 * (hr1 - hr2), gap(index), atol=1e-10)
