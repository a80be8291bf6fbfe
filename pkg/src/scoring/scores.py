import math
import logging
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from scipy import integrate, special

from .extended import ExtendedReal
from .rules import ScoringRule
from ..data.models import ForecastRecord
from ..exceptions import ScoringError

logger = logging.getLogger(__name__)

# Lower cut for the exp substitution when the integration range reaches an endpoint
_LOG_CUT = math.log(1e-300)


@lru_cache(maxsize=8)
def _legendre_nodes(n: int) -> Tuple[np.ndarray, np.ndarray]:
    points, weights = special.roots_legendre(n)
    return points, weights


def _check_case(x: float, y: int) -> None:
    if not (math.isfinite(x) and 0.0 <= x <= 1.0):
        raise ScoringError(f"forecast outside [0,1]: {x!r}")
    if y not in (0, 1):
        raise ScoringError(f"outcome not in {{0,1}}: {y!r}")


def elementary_score(theta: float, x: float, y: int) -> float:
    """
        Elementary score S_theta(x, y): 2 theta for a false alarm, 2 (1 - theta)
        for a missed event and 2 theta (1 - theta) when x equals theta.
    """
    if not 0.0 < theta < 1.0:
        raise ScoringError(f"theta must lie in (0,1), got {theta}")
    _check_case(x, y)
    if x == theta:
        return 2.0 * theta * (1.0 - theta)
    if x > theta and y == 0:
        return 2.0 * theta
    if x < theta and y == 1:
        return 2.0 * (1.0 - theta)
    return 0.0


def _beta_score(alpha: float, beta: float, x, y):
    event = 2.0 * special.beta(alpha, beta + 1.0) * (1.0 - special.betainc(alpha, beta + 1.0, x))
    no_event = 2.0 * special.beta(alpha + 1.0, beta) * special.betainc(alpha + 1.0, beta, x)
    return np.where(np.asarray(y) == 1, event, no_event)


def score_array(rule: ScoringRule, x, y) -> np.ndarray:
    """Per-row scores as a float array; logarithmic penalties may be +inf"""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y)

    if rule.kind == "brier":
        return (x - y) ** 2

    if rule.kind == "log":
        p = np.where(y == 1, x, 1.0 - x)
        with np.errstate(divide="ignore"):
            return -np.log(p)

    if rule.kind == "beta":
        return np.asarray(_beta_score(rule.alpha, rule.beta, x, y), dtype=float)

    theta = rule.threshold
    return np.where(
        x == theta,
        2.0 * theta * (1.0 - theta),
        np.where((x > theta) & (y == 0), 2.0 * theta, np.where((x < theta) & (y == 1), 2.0 * (1.0 - theta), 0.0)),
    )


def score(rule: ScoringRule, x: float, y: int) -> ExtendedReal:
    """Closed-form score S(x, y); the log score is +inf for x=0, y=1 and x=1, y=0"""
    _check_case(x, y)
    return ExtendedReal(float(score_array(rule, x, y)))


def mean_score(rule: ScoringRule, record: ForecastRecord) -> ExtendedReal:
    """Arithmetic mean score over a record, +inf as soon as one row is infinite"""
    values = score_array(rule, record.x, record.y)
    infinite = int(np.count_nonzero(np.isinf(values)))
    if infinite:
        logger.debug(f"{record.name}: {infinite} row(s) with infinite {rule.name} score")
        return ExtendedReal(math.inf)
    return ExtendedReal(float(np.mean(values)))


def savage_phi(rule: ScoringRule, t: float) -> float:
    """Convex function phi of the Savage representation"""
    if rule.kind == "brier":
        return t * t
    if rule.kind == "log":
        return special.xlogy(t, t) + special.xlogy(1.0 - t, 1.0 - t)
    if rule.kind == "beta":
        return -(t * float(_beta_score(rule.alpha, rule.beta, t, 1)) + (1.0 - t) * float(_beta_score(rule.alpha, rule.beta, t, 0)))
    theta = rule.threshold
    return 2.0 * max((1.0 - theta) * t, theta * (1.0 - t))


def savage_subgradient(rule: ScoringRule, t: float) -> float:
    """
        Subgradient phi'(t). At the kink t = theta of the elementary scores it is
        2 (1 - 2 theta), which reproduces the tie penalty 2 theta (1 - theta).
    """
    if rule.kind == "brier":
        return 2.0 * t
    if rule.kind == "log":
        return math.log(t / (1.0 - t))
    if rule.kind == "beta":
        return float(_beta_score(rule.alpha, rule.beta, t, 0)) - float(_beta_score(rule.alpha, rule.beta, t, 1))
    theta = rule.threshold
    if t > theta:
        return 2.0 * (1.0 - theta)
    if t < theta:
        return -2.0 * theta
    return 2.0 * (1.0 - 2.0 * theta)


def savage_score(rule: ScoringRule, x: float, y: int) -> ExtendedReal:
    """S(x, y) = phi(y) - phi(x) - phi'(x) (y - x)"""
    _check_case(x, y)
    if rule.kind == "log" and x in (0.0, 1.0):
        # phi' is unbounded at the endpoints
        return ExtendedReal(0.0 if x == y else math.inf)
    value = savage_phi(rule, float(y)) - savage_phi(rule, x) - savage_subgradient(rule, x) * (y - x)
    return ExtendedReal(value)


def _integrate_piece(g, lo: float, hi: float, substitution: Optional[str], nodes: Optional[int]) -> float:
    if substitution == "zero":
        # theta = e^u
        f = lambda u: g(np.exp(u)) * np.exp(u)
        u_lo = math.log(lo) if lo > 0.0 else _LOG_CUT
        u_hi = math.log(hi)
    elif substitution == "one":
        # theta = 1 - e^u
        f = lambda u: g(1.0 - np.exp(u)) * np.exp(u)
        u_lo = math.log(1.0 - hi) if hi < 1.0 else _LOG_CUT
        u_hi = math.log(1.0 - lo)
    else:
        f, u_lo, u_hi = g, lo, hi

    if nodes is None:
        value, _ = integrate.quad(f, u_lo, u_hi, epsabs=1e-13, epsrel=1e-12, limit=200)
        return float(value)

    points, weights = _legendre_nodes(nodes)
    half = 0.5 * (u_hi - u_lo)
    mid = 0.5 * (u_hi + u_lo)
    return float(half * np.sum(weights * f(mid + half * points)))


def mixture_score(rule: ScoringRule, x: float, y: int, quadrature: Optional[int] = None) -> float:
    """
        Numerical value of the Schervish integral of S_theta(x, y) h(theta).

        quadrature=None uses adaptive quadrature, an integer the number of
        Gauss-Legendre nodes per piece. The range is split at x and 1/2 and
        singular ends are removed by exponential substitution.
    """
    _check_case(x, y)
    density = rule.density
    if density is None:
        raise ScoringError(f"{rule.name} has no mixing density (point mass at theta)")
    if rule.kind == "log" and ((x == 0.0 and y == 1) or (x == 1.0 and y == 0)):
        raise ScoringError(f"Schervish integral of the log score diverges at x={x}, y={y}")
    if quadrature is not None and quadrature < 1:
        raise ScoringError(f"quadrature needs at least one node, got {quadrature}")

    if y == 1:
        lo, hi = x, 1.0
        g = lambda t: 2.0 * (1.0 - t) * density(t)
    else:
        lo, hi = 0.0, x
        g = lambda t: 2.0 * t * density(t)

    total = 0.0
    for a, b in ((lo, min(hi, 0.5)), (max(lo, 0.5), hi)):
        if b <= a:
            continue
        if b <= 0.5:
            substitution = "zero" if (y == 1 and density.singular_at_zero()) else None
        else:
            substitution = "one" if (y == 0 and density.singular_at_one()) else None
        total += _integrate_piece(g, a, b, substitution, quadrature)
    return total
