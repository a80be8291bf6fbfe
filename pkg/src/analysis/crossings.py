import logging

import numpy as np
from pydantic import BaseModel, ConfigDict

from .piecewise import Dominance, PiecewiseFunction, count_sign_changes, dominance
from ..data.empirical import EmpiricalDistribution, class_priors, empirical_distribution
from ..data.models import ForecastRecord
from ..exceptions import DataError, DegenerateOutcomesError
from ..murphy.curve import MurphyCurve, murphy_curve, murphy_grid
from ..pav.calibration import recalibrate as pav_recalibrate

logger = logging.getLogger(__name__)


class CrossingReport(BaseModel):
    """Sign changes and dominance relations between two forecasts on shared outcomes"""
    first: str
    second: str
    murphy_sign_changes: int
    roc_sign_changes: int
    cdf_sign_changes: int
    tolerance: float
    murphy_dominates: Dominance
    roc_dominates: Dominance
    sharper: Dominance
    calibrated: bool

    model_config = ConfigDict(frozen=True)


def _check_pair(rec1: ForecastRecord, rec2: ForecastRecord) -> None:
    if rec1.n != rec2.n or not np.array_equal(rec1.y, rec2.y):
        raise DataError(f"'{rec1.name}' and '{rec2.name}' are not evaluated on the same outcomes")
    if class_priors(rec1.outcomes).degenerate:
        raise DegenerateOutcomesError("curve comparisons need both outcome classes")


def murphy_difference(c1: MurphyCurve, c2: MurphyCurve) -> PiecewiseFunction:
    """Half the difference of two Murphy curves, exact on the union of their knots"""
    if c1.n != c2.n:
        raise DataError(f"Murphy curves built on {c1.n} and {c2.n} cases")
    knots = np.union1d(c1.knots, c2.knots)
    mid = 0.5 * (knots[:-1] + knots[1:])
    s1 = np.searchsorted(c1.knots, mid) - 1
    s2 = np.searchsorted(c2.knots, mid) - 1
    a = (c1.a[s1] - c2.a[s2]) / 2.0
    b = (c1.b[s1] - c2.b[s2]) / 2.0

    # theta = 0 and theta = 1 carry the one-sided limits
    point_values = np.empty(knots.size)
    point_values[0] = a[0]
    point_values[-1] = a[-1] + b[-1]
    interior = knots[1:-1]
    if interior.size:
        point_values[1:-1] = (murphy_grid(c1, interior) - murphy_grid(c2, interior)) / 2.0
    return PiecewiseFunction(breakpoints=knots, a=a, b=b, point_values=point_values)


def roc_difference(rec1: ForecastRecord, rec2: ForecastRecord) -> PiecewiseFunction:
    """
        D(c) = integral over [0, c] of Q_1 - Q_2, the gap between the ROC curves
        at index c measured along lines of slope -pi0/pi1. Piecewise linear with
        breakpoints i/n.
    """
    _check_pair(rec1, rec2)
    n = rec1.n
    slope = np.sort(rec1.x) - np.sort(rec2.x)
    breakpoints = np.arange(n + 1) / n
    values = np.concatenate(([0.0], np.cumsum(slope) / n))
    a = values[:-1] - slope * breakpoints[:-1]
    return PiecewiseFunction(breakpoints=breakpoints, a=a, b=slope, point_values=values)


def _union_support(d1: EmpiricalDistribution, d2: EmpiricalDistribution) -> np.ndarray:
    return np.union1d(np.union1d(d1.support, d2.support), [0.0, 1.0])


def cdf_difference(d1: EmpiricalDistribution, d2: EmpiricalDistribution) -> PiecewiseFunction:
    """Step function F_1 - F_2"""
    breakpoints = _union_support(d1, d2)
    values = d1.cdf(breakpoints) - d2.cdf(breakpoints)
    return PiecewiseFunction(
        breakpoints=breakpoints,
        a=values[:-1].copy(),
        b=np.zeros(breakpoints.size - 1),
        point_values=values,
    )


def integrated_cdf_difference(d1: EmpiricalDistribution, d2: EmpiricalDistribution) -> PiecewiseFunction:
    """theta -> integral over [0, theta] of F_2 - F_1"""
    breakpoints = _union_support(d1, d2)
    slope = d2.cdf(breakpoints[:-1]) - d1.cdf(breakpoints[:-1])
    values = np.concatenate(([0.0], np.cumsum(slope * np.diff(breakpoints))))
    a = values[:-1] - slope * breakpoints[:-1]
    return PiecewiseFunction(breakpoints=breakpoints, a=a, b=slope, point_values=values)


def sharper(rec1: ForecastRecord, rec2: ForecastRecord, tol: float = 1e-10) -> Dominance:
    """
        Convex-order comparison of the forecast distributions: "first" when the
        integral over [0, theta] of F_1 - F_2 is >= -tol for all theta and > tol somewhere.
    """
    gap = integrated_cdf_difference(empirical_distribution(rec1.forecasts), empirical_distribution(rec2.forecasts))
    # gap is the negative of the convex-order integral, so "first" means rec1 is sharper
    return dominance(gap, tol)


def crossing_report(
    rec1: ForecastRecord,
    rec2: ForecastRecord,
    tol: float = 1e-10,
    recalibrate: bool = True,
) -> CrossingReport:
    """
        Compare two forecasts through their Murphy and ROC curve differences.
        With recalibrate=False the report is descriptive and carries calibrated=False.
    """
    _check_pair(rec1, rec2)
    if recalibrate:
        rec1, rec2 = pav_recalibrate(rec1), pav_recalibrate(rec2)

    mc = murphy_difference(murphy_curve(rec1), murphy_curve(rec2))
    roc = roc_difference(rec1, rec2)
    cdf = cdf_difference(empirical_distribution(rec1.forecasts), empirical_distribution(rec2.forecasts))

    report = CrossingReport(
        first=rec1.name,
        second=rec2.name,
        murphy_sign_changes=count_sign_changes(mc, tol),
        roc_sign_changes=count_sign_changes(roc, tol),
        cdf_sign_changes=count_sign_changes(cdf, tol),
        tolerance=tol,
        murphy_dominates=dominance(mc, tol),
        roc_dominates=dominance(roc, tol),
        sharper=sharper(rec1, rec2, tol),
        calibrated=recalibrate,
    )
    logger.info(
        f"Crossings {rec1.name} vs {rec2.name}: Murphy {report.murphy_sign_changes}, "
        f"ROC {report.roc_sign_changes}, dominance {report.murphy_dominates}/{report.roc_dominates}"
    )
    return report
