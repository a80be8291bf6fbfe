class TriptychError(Exception):
    """Base class for all forecast evaluation errors"""


class DataError(TriptychError, ValueError):
    """Malformed or inconsistent forecast/outcome data"""


class DegenerateOutcomesError(TriptychError, ValueError):
    """Record lacks one of the two outcome classes"""


class ScoringError(TriptychError, ValueError):
    """Invalid scoring rule or evaluation outside its domain"""


class FigureError(TriptychError):
    """Invalid figure specification"""
