from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from ..exceptions import DataError

Dominance = Literal["none", "first", "second"]


@dataclass(frozen=True)
class PiecewiseFunction:
    """
        Piecewise-affine function on [0, 1].

        On the open interval (breakpoints[j], breakpoints[j+1]) the value is
        a[j] + b[j] t; point_values, when given, are the exact values at the breakpoints.
    """
    breakpoints: np.ndarray
    a: np.ndarray
    b: np.ndarray
    point_values: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.breakpoints.size < 2 or self.a.size != self.breakpoints.size - 1 or self.b.size != self.a.size:
            raise DataError("piecewise function needs one (a, b) pair per interval")
        if self.point_values is not None and self.point_values.size != self.breakpoints.size:
            raise DataError("point_values must align with breakpoints")

    @property
    def left_limits(self) -> np.ndarray:
        """Limit at the left end of each piece"""
        return self.a + self.b * self.breakpoints[:-1]

    @property
    def right_limits(self) -> np.ndarray:
        """Limit at the right end of each piece"""
        return self.a + self.b * self.breakpoints[1:]

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        piece = np.clip(np.searchsorted(self.breakpoints, t, side="right") - 1, 0, self.a.size - 1)
        values = self.a[piece] + self.b[piece] * t
        if self.point_values is not None:
            pos = np.clip(np.searchsorted(self.breakpoints, t), 0, self.breakpoints.size - 1)
            values = np.where(self.breakpoints[pos] == t, self.point_values[pos], values)
        return values

    def sample_values(self) -> np.ndarray:
        """
            Values in increasing order of t: each breakpoint value (when known) followed
            by the left limit, midpoint and right limit of the next piece. For affine
            pieces this sequence shows every sign change of the function.
        """
        mid = 0.5 * (self.breakpoints[:-1] + self.breakpoints[1:])
        columns = [self.left_limits, self.a + self.b * mid, self.right_limits]
        if self.point_values is not None:
            columns.insert(0, self.point_values[:-1])
        body = np.column_stack(columns).ravel()
        if self.point_values is not None:
            body = np.append(body, self.point_values[-1])
        return body

    def integral(self) -> float:
        lo, hi = self.breakpoints[:-1], self.breakpoints[1:]
        return float(np.sum(self.a * (hi - lo) + self.b * (hi * hi - lo * lo) / 2.0))

    def to_json(self) -> dict:
        return {
            "breakpoints": self.breakpoints.tolist(),
            "pieces": [{"a": float(a), "b": float(b)} for a, b in zip(self.a, self.b)],
            "point_values": None if self.point_values is None else self.point_values.tolist(),
        }


def zero_function() -> PiecewiseFunction:
    return PiecewiseFunction(breakpoints=np.array([0.0, 1.0]), a=np.zeros(1), b=np.zeros(1))


def count_sign_changes(f: PiecewiseFunction, tol: float = 1e-10) -> int:
    """Alternations in the sign sequence of f, ignoring values with |f| <= tol"""
    if tol < 0:
        raise DataError(f"tolerance must be non-negative, got {tol}")
    values = f.sample_values()
    signs = np.sign(values[np.abs(values) > tol])
    if signs.size < 2:
        return 0
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def dominance(f: PiecewiseFunction, tol: float = 1e-10) -> Dominance:
    """
        "first" when f <= tol everywhere and f < -tol somewhere, "second" for the
        mirror case, "none" otherwise. f is a difference first minus second of
        losses, so a negative f favours the first forecast.
    """
    values = f.sample_values()
    if np.all(values <= tol) and np.any(values < -tol):
        return "first"
    if np.all(values >= -tol) and np.any(values > tol):
        return "second"
    return "none"
