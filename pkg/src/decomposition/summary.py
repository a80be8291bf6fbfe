import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .corp import ScoreDecomposition, corp_decomposition
from ..data.cleaning import complete_cases
from ..data.models import Dataset
from ..exceptions import DegenerateOutcomesError
from ..roc.curve import auc, concave_roc, roc_curve
from ..scoring.rules import ScoringRule

logger = logging.getLogger(__name__)


@dataclass
class ForecasterSummary:
    name: str
    n: int
    decompositions: Dict[str, ScoreDecomposition] = field(default_factory=dict)
    auc: Optional[float] = None
    concave_auc: Optional[float] = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "scores": {rule: d.mean.to_json() for rule, d in self.decompositions.items()},
            "decompositions": {rule: d.to_json() for rule, d in self.decompositions.items()},
            "auc": self.auc,
            "concave_auc": self.concave_auc,
        }

    def to_row(self) -> dict:
        """Flat row for CSV output"""
        row = {"name": self.name, "n": self.n}
        for rule, d in self.decompositions.items():
            row[f"{rule}"] = d.mean.to_json()
            row[f"{rule}_mcb"] = d.mcb.to_json()
            row[f"{rule}_dsc"] = d.dsc
            row[f"{rule}_unc"] = d.unc
        row["auc"] = self.auc
        row["concave_auc"] = self.concave_auc
        return row


def performance_summary(
    dataset: Dataset,
    rules: Sequence[ScoringRule],
    names: Optional[Sequence[str]] = None,
) -> List[ForecasterSummary]:
    """
        Mean scores, CORP components and AUC per forecaster, evaluated on the
        jointly complete rows of the selected forecasters.
    """
    selected = complete_cases(dataset.select(names) if names else dataset)
    summaries = []
    for record in selected.records():
        summary = ForecasterSummary(name=record.name, n=record.n)
        for rule in rules:
            summary.decompositions[rule.name] = corp_decomposition(rule, record)
        try:
            summary.auc = auc(roc_curve(record))
            summary.concave_auc = auc(concave_roc(record))
        except DegenerateOutcomesError as e:
            logger.warning(f"AUC skipped: {e}")
        summaries.append(summary)

    logger.info(f"Summarized {len(summaries)} forecaster(s) on {selected.n_rows} complete rows")
    return summaries
