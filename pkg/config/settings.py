import os
import logging
from pydantic import BaseModel
from dotenv import load_dotenv

load_dotenv()


def _env_bool(name: str, default: str = "false") -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


class Settings(BaseModel):
    """Application settings from environment variables"""

    # Logging
    LOG_LEVEL: str = os.getenv("TRIPTYCH_LOG_LEVEL", "INFO")
    LOG_DIR: str = os.getenv("TRIPTYCH_LOG_DIR", "logs")
    LOG_TO_FILE: bool = _env_bool("TRIPTYCH_LOG_TO_FILE")

    # Consistency bands
    LEVEL: float = float(os.getenv("TRIPTYCH_LEVEL", "0.9"))
    RESAMPLES: int = int(os.getenv("TRIPTYCH_RESAMPLES", "1000"))
    SEED: int = int(os.getenv("TRIPTYCH_SEED", "42"))
    WORKERS: int = int(os.getenv("TRIPTYCH_WORKERS", "1"))

    # Curve analysis
    SIGN_TOL: float = float(os.getenv("TRIPTYCH_SIGN_TOL", "1e-10"))

    # Figures
    HISTOGRAM_BINS: int = int(os.getenv("TRIPTYCH_HISTOGRAM_BINS", "10"))
    FIGURE_WIDTH: int = int(os.getenv("TRIPTYCH_FIGURE_WIDTH", "1200"))
    FIGURE_HEIGHT: int = int(os.getenv("TRIPTYCH_FIGURE_HEIGHT", "400"))

    # Simulation
    SIM_N: int = int(os.getenv("TRIPTYCH_SIM_N", "100000"))

    @property
    def log_level(self) -> int:
        """Numeric logging level for LOG_LEVEL"""
        level = logging.getLevelName(self.LOG_LEVEL.upper())
        return level if isinstance(level, int) else logging.INFO
