import math
from typing import Union


class ExtendedReal(float):
    """
        A real number or +infinity.

        Mean scores become infinite as soon as one row carries an infinite
        logarithmic penalty; NaN and -infinity are never valid values.
    """

    def __new__(cls, value: Union[float, int, str] = 0.0):
        if isinstance(value, str):
            return cls.from_json(value)
        v = float(value)
        if math.isnan(v) or v == -math.inf:
            raise ValueError(f"not an extended real: {value!r}")
        return super().__new__(cls, v)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self)

    def __add__(self, other):
        return ExtendedReal(float(self) + float(other))

    __radd__ = __add__

    def __repr__(self) -> str:
        return "ExtendedReal(inf)" if self.is_infinite else f"ExtendedReal({float(self)!r})"

    def to_json(self) -> Union[float, str]:
        return "inf" if self.is_infinite else float(self)

    @classmethod
    def from_json(cls, value: Union[float, int, str]) -> "ExtendedReal":
        if isinstance(value, str):
            if value.strip().lower() in ("inf", "+inf", "infinity"):
                return super().__new__(cls, math.inf)
            raise ValueError(f"not an extended real: {value!r}")
        return cls(value)


INFINITY = ExtendedReal(math.inf)
