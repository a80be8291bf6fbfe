import math
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy import special

from ..exceptions import ScoringError


class MixingDensity(BaseModel):
    """
        Density h of the mixing measure in the Schervish representation
        S(x, y) = integral of S_theta(x, y) h(theta) dtheta.

        uniform: h = 1 (Brier)
        log:     h = 1 / (2 theta (1 - theta)) (logarithmic score, improper at both ends)
        beta:    h = theta^(alpha-1) (1 - theta)^(beta-1)
    """
    kind: Literal["uniform", "log", "beta"]
    alpha: float = 1.0
    beta: float = 1.0

    model_config = ConfigDict(frozen=True)

    def __call__(self, theta):
        t = np.asarray(theta, dtype=float)
        if self.kind == "uniform":
            return np.ones_like(t)
        if self.kind == "log":
            return 1.0 / (2.0 * t * (1.0 - t))
        return t ** (self.alpha - 1.0) * (1.0 - t) ** (self.beta - 1.0)

    def singular_at_zero(self) -> bool:
        return self.kind == "log" or (self.kind == "beta" and self.alpha < 1.0)

    def singular_at_one(self) -> bool:
        return self.kind == "log" or (self.kind == "beta" and self.beta < 1.0)

    def affine_integral(self, lo: float, hi: float, a: float, b: float) -> float:
        """
            Exact value of the integral of (a + b theta) h(theta) over [lo, hi].
            Returns +inf when the integral diverges at an endpoint.
        """
        if hi <= lo:
            return 0.0
        if self.kind == "uniform":
            return a * (hi - lo) + b * (hi * hi - lo * lo) / 2.0

        if self.kind == "log":
            # h = (1/theta + 1/(1-theta)) / 2
            if lo == 0.0:
                left = 0.0 if a == 0.0 else math.inf
            else:
                left = a * math.log(hi / lo)
            if hi == 1.0:
                right = 0.0 if a + b == 0.0 else math.inf
            else:
                right = (a + b) * math.log((1.0 - lo) / (1.0 - hi))
            return 0.5 * (left + right)

        p, q = self.alpha, self.beta
        zeroth = special.beta(p, q) * (special.betainc(p, q, hi) - special.betainc(p, q, lo))
        first = special.beta(p + 1.0, q) * (special.betainc(p + 1.0, q, hi) - special.betainc(p + 1.0, q, lo))
        return float(a * zeroth + b * first)


class ScoringRule(BaseModel):
    """
        A proper scoring rule for binary outcomes.

        zero_one is the elementary score at theta = 1/2; brier coincides with beta(1, 1).
    """
    kind: Literal["brier", "log", "zero_one", "elementary", "beta"]
    theta: Optional[float] = None
    alpha: Optional[float] = None
    beta: Optional[float] = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_parameters(self) -> "ScoringRule":
        if self.kind == "elementary":
            if self.theta is None or not 0.0 < self.theta < 1.0:
                raise ValueError(f"elementary score needs theta in (0,1), got {self.theta}")
        if self.kind == "beta":
            if self.alpha is None or self.beta is None or not (self.alpha > 0.0 and self.beta > 0.0):
                raise ValueError(f"beta family needs alpha, beta > 0, got {self.alpha}, {self.beta}")
            if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
                raise ValueError("beta family parameters must be finite")
        return self

    @classmethod
    def brier(cls) -> "ScoringRule":
        return cls(kind="brier")

    @classmethod
    def log(cls) -> "ScoringRule":
        return cls(kind="log")

    @classmethod
    def zero_one(cls) -> "ScoringRule":
        return cls(kind="zero_one")

    @classmethod
    def elementary(cls, theta: float) -> "ScoringRule":
        if not 0.0 < theta < 1.0:
            raise ScoringError(f"theta must lie in (0,1), got {theta}")
        return cls(kind="elementary", theta=theta)

    @classmethod
    def beta_family(cls, alpha: float, beta: float) -> "ScoringRule":
        if not (alpha > 0.0 and beta > 0.0) or not (math.isfinite(alpha) and math.isfinite(beta)):
            raise ScoringError(f"beta family needs finite alpha, beta > 0, got {alpha}, {beta}")
        return cls(kind="beta", alpha=alpha, beta=beta)

    @property
    def threshold(self) -> Optional[float]:
        """Decision threshold of the elementary scores, None otherwise"""
        if self.kind == "zero_one":
            return 0.5
        return self.theta if self.kind == "elementary" else None

    @property
    def density(self) -> Optional[MixingDensity]:
        """Mixing density, or None when the mixing measure is a point mass"""
        if self.kind == "brier":
            return MixingDensity(kind="uniform")
        if self.kind == "log":
            return MixingDensity(kind="log")
        if self.kind == "beta":
            return MixingDensity(kind="beta", alpha=self.alpha, beta=self.beta)
        return None

    @property
    def name(self) -> str:
        if self.kind == "zero_one":
            return "misclass"
        if self.kind == "elementary":
            return f"elementary:{_format_parameter(self.theta)}"
        if self.kind == "beta":
            return f"beta:{_format_parameter(self.alpha)}:{_format_parameter(self.beta)}"
        return self.kind

    def __str__(self) -> str:
        return self.name


def _format_parameter(value: float) -> str:
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def parse_rule(name: str) -> ScoringRule:
    """
        Scoring rule from its CLI/JSON name: brier, log, misclass,
        elementary:<theta> or beta:<alpha>:<beta>.
    """
    parts = name.strip().lower().split(":")
    head, args = parts[0], parts[1:]
    try:
        values = [float(a) for a in args]
    except ValueError:
        raise ScoringError(f"invalid score name '{name}': parameters must be numbers")

    if head in ("brier", "log", "misclass") and not values:
        return {"brier": ScoringRule.brier, "log": ScoringRule.log, "misclass": ScoringRule.zero_one}[head]()
    if head == "elementary" and len(values) == 1:
        return ScoringRule.elementary(values[0])
    if head == "beta" and len(values) == 2:
        return ScoringRule.beta_family(values[0], values[1])
    raise ScoringError(
        f"invalid score name '{name}' (expected brier, log, misclass, elementary:<theta>, beta:<alpha>:<beta>)"
    )
