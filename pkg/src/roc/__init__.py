from .curve import RocCurve, roc_curve, concave_roc, auc, pairwise_auc, roc_from_json

__all__ = ["RocCurve", "roc_curve", "concave_roc", "auc", "pairwise_auc", "roc_from_json"]
