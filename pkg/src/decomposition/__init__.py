from .corp import ScoreDecomposition, corp_decomposition
from .mcbdsc import McbDscPoint, McbDscPlot, mcb_dsc_plot, rank_forecasters
from .summary import ForecasterSummary, performance_summary

__all__ = [
    "ScoreDecomposition",
    "corp_decomposition",
    "McbDscPoint",
    "McbDscPlot",
    "mcb_dsc_plot",
    "rank_forecasters",
    "ForecasterSummary",
    "performance_summary",
]
