from .calibration import (
    CalibrationBlock,
    CalibrationFit,
    pool_adjacent_violators,
    pav_calibrate,
    apply_recalibration,
    recalibrate,
)

__all__ = [
    "CalibrationBlock",
    "CalibrationFit",
    "pool_adjacent_violators",
    "pav_calibrate",
    "apply_recalibration",
    "recalibrate",
]
