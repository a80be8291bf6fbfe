from .bands import ConsistencyBand, band_from_json, consistency_band
from .diagram import ReliabilityBin, ReliabilityDiagram, reliability_curve, reliability_from_json

__all__ = [
    "ConsistencyBand",
    "band_from_json",
    "consistency_band",
    "ReliabilityBin",
    "ReliabilityDiagram",
    "reliability_curve",
    "reliability_from_json",
]
