import math
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..data.models import ForecastRecord
from ..pav.calibration import recalibrate
from ..scoring.extended import ExtendedReal
from ..scoring.rules import ScoringRule
from ..scoring.scores import mean_score

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScoreDecomposition:
    """
        CORP decomposition of a mean score: S = MCB - DSC + UNC with
        MCB = S - S_C, DSC = S_R - S_C and UNC = S_R, where S_C is the mean score
        of the PAV-recalibrated forecasts and S_R that of the constant event frequency.
    """
    rule: ScoringRule
    name: str
    mean: ExtendedReal
    mcb: ExtendedReal
    dsc: float
    unc: float
    s_c: float
    s_r: float

    @property
    def skill(self) -> Optional[float]:
        """(UNC - S) / UNC, or None when UNC is zero or the mean score infinite"""
        if self.unc == 0.0 or self.mean.is_infinite:
            return None
        return (self.unc - self.mean) / self.unc

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "score": self.rule.name,
            "mean": self.mean.to_json(),
            "mcb": self.mcb.to_json(),
            "dsc": self.dsc,
            "unc": self.unc,
            "s_c": self.s_c,
            "s_r": self.s_r,
            "skill": self.skill,
        }


def corp_decomposition(rule: ScoringRule, record: ForecastRecord) -> ScoreDecomposition:
    calibrated = recalibrate(record)
    r = float(np.mean(record.y))
    reference = record.with_forecasts(np.full(record.n, r))

    mean = mean_score(rule, record)
    s_c = float(mean_score(rule, calibrated))
    s_r = float(mean_score(rule, reference))

    if mean.is_infinite:
        logger.warning(f"{record.name}: infinite mean {rule.name} score, MCB is infinite")
        mcb = ExtendedReal(math.inf)
    else:
        mcb = ExtendedReal(mean - s_c)

    return ScoreDecomposition(
        rule=rule,
        name=record.name,
        mean=mean,
        mcb=mcb,
        dsc=s_r - s_c,
        unc=s_r,
        s_c=s_c,
        s_r=s_r,
    )
