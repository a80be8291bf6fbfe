from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..exceptions import DataError

ArrayLike = Union[float, Sequence[float], np.ndarray]


@dataclass(frozen=True)
class EmpiricalDistribution:
    """
        Empirical CDF F and its left-continuous generalized inverse Q.

        support holds the sorted distinct values, cumulative the value of F at each of them.
    """
    support: np.ndarray
    cumulative: np.ndarray
    n: int

    def cdf(self, t: ArrayLike):
        """F(t) = #{v_i <= t} / n"""
        idx = np.searchsorted(self.support, t, side="right")
        values = np.where(idx > 0, self.cumulative[np.maximum(idx - 1, 0)], 0.0)
        return float(values) if np.ndim(values) == 0 else values

    def quantile(self, alpha: ArrayLike):
        """Q(alpha) = smallest v with F(v) >= alpha, for alpha in (0, 1]"""
        a = np.asarray(alpha, dtype=float)
        if np.any((a <= 0.0) | (a > 1.0)):
            raise DataError("quantile level must lie in (0, 1]")
        idx = np.searchsorted(self.cumulative, a, side="left")
        values = self.support[np.minimum(idx, len(self.support) - 1)]
        return float(values) if np.ndim(values) == 0 else values

    @property
    def masses(self) -> np.ndarray:
        return np.diff(self.cumulative, prepend=0.0)


def empirical_distribution(values: Sequence[float]) -> EmpiricalDistribution:
    x = np.asarray(values, dtype=float)
    if x.size == 0:
        raise DataError("empirical distribution of an empty list")
    support, counts = np.unique(x, return_counts=True)
    cumulative = np.cumsum(counts) / x.size
    # exact top of the step function despite rounding in the cumulative sum
    cumulative[-1] = 1.0
    return EmpiricalDistribution(support=support, cumulative=cumulative, n=int(x.size))


class ClassPriors(BaseModel):
    """Unconditional outcome frequencies of a record"""
    pi0: float
    pi1: float
    r: float
    n: int
    degenerate: bool

    model_config = ConfigDict(frozen=True)


def class_priors(outcomes: Sequence[int]) -> ClassPriors:
    y = np.asarray(outcomes)
    if y.size == 0:
        raise DataError("class priors of an empty outcome list")
    events = int(np.count_nonzero(y == 1))
    r = events / y.size
    return ClassPriors(
        pi0=(y.size - events) / y.size,
        pi1=r,
        r=r,
        n=int(y.size),
        degenerate=events == 0 or events == y.size,
    )
