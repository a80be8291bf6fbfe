import os
import sys
import time
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
from dataclasses import dataclass, field

# Add project root to path
sys.path.insert(0, os.path.dirname(__file__))

from config.settings import Settings
from src.analysis import CrossingReport, crossing_report
from src.data import Dataset, ForecastRecord, complete_cases, read_dataset
from src.decomposition import (
    ForecasterSummary,
    McbDscPlot,
    ScoreDecomposition,
    corp_decomposition,
    mcb_dsc_plot,
    performance_summary,
    rank_forecasters,
)
from src.exceptions import DataError, DegenerateOutcomesError, FigureError, ScoringError
from src.figures import TRIPTYCH_PANELS
from src.murphy import MurphyCurve, murphy_curve
from src.pav import recalibrate
from src.reliability import ReliabilityDiagram, consistency_band, reliability_curve
from src.roc import RocCurve, concave_roc, roc_curve
from src.scoring import ScoringRule
from src.simulation import ScenarioSample, sample_scenario


logger = logging.getLogger(__name__)


def setup_logging(
    level: int = logging.INFO,
    log_to_file: bool = False,
    log_to_console: bool = True,
    log_dir: Optional[str] = None,
) -> logging.Logger:
    """
    Configure logging for the application.

    Console output goes to stderr; stdout carries JSON/CSV payloads.

    Args:
        level: Logging level (default: INFO)
        log_to_file: Also write logs to <log_dir>/triptych.log (default: False)
        log_to_console: Write logs to stderr (default: True)
        log_dir: Directory for the log file (default: Settings.LOG_DIR)

    Returns:
        Root logger instance
    """
    root_logger = logging.getLogger()
    root_logger.handlers.clear()
    root_logger.setLevel(level)

    formatter = logging.Formatter(
        '%(asctime)s | %(levelname)-8s | %(name)s | %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    if log_to_file:
        directory = Path(log_dir or Settings().LOG_DIR)
        directory.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(directory / "triptych.log", encoding='utf-8')
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    if log_to_console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(formatter)
        root_logger.addHandler(console_handler)

    logging.getLogger('src').setLevel(level)

    # Suppress noisy third-party logs
    for lib in ['numexpr', 'asyncio']:
        logging.getLogger(lib).setLevel(logging.WARNING)

    return root_logger


def categorize_error(e: BaseException) -> str:
    """Error category of an exception: data, numeric, usage or internal"""
    if isinstance(e, DegenerateOutcomesError) or isinstance(e, ScoringError):
        return "numeric"
    if isinstance(e, (DataError, OSError)):
        return "data"
    if isinstance(e, FigureError):
        return "usage"
    if isinstance(e, (ArithmeticError, FloatingPointError)):
        return "numeric"
    return "internal"


def _failure(result_type, e: BaseException, action: str):
    category = categorize_error(e)
    if category == "internal":
        logger.error(f"{action} failed: {e}", exc_info=True)
    else:
        logger.error(f"{action} failed: {e}")
    return result_type(success=False, error=str(e), error_category=category)


@dataclass
class DatasetLoadResult:
    """Result of reading and selecting a dataset"""
    success: bool
    dataset: Optional[Dataset] = None
    rows: int = 0
    dropped_rows: int = 0
    forecasters: List[str] = field(default_factory=list)
    error: Optional[str] = None
    error_category: Optional[str] = None


@dataclass
class DecompositionResult:
    """CORP decompositions of one scoring rule for several forecasters"""
    success: bool
    rule: Optional[ScoringRule] = None
    decompositions: List[ScoreDecomposition] = field(default_factory=list)
    plot: Optional[McbDscPlot] = None
    error: Optional[str] = None
    error_category: Optional[str] = None


@dataclass
class TriptychResult:
    """Murphy curves, reliability diagrams and ROC curves for the selected forecasters"""
    success: bool
    murphy: List[MurphyCurve] = field(default_factory=list)
    reliability: List[ReliabilityDiagram] = field(default_factory=list)
    roc: List[RocCurve] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None
    error_category: Optional[str] = None


@dataclass
class CrossingResult:
    success: bool
    report: Optional[CrossingReport] = None
    error: Optional[str] = None
    error_category: Optional[str] = None


@dataclass
class SimulationResult:
    success: bool
    sample: Optional[ScenarioSample] = None
    error: Optional[str] = None
    error_category: Optional[str] = None


@dataclass
class SummaryResult:
    success: bool
    summaries: List[ForecasterSummary] = field(default_factory=list)
    error: Optional[str] = None
    error_category: Optional[str] = None


def load_dataset(
    path: Optional[str] = None,
    format: str = "wide",
    forecasters: Optional[Sequence[str]] = None,
) -> DatasetLoadResult:
    """
    Read a dataset and restrict it to the jointly complete rows of the selected forecasters.

    Args:
        path: CSV file, or None / '-' for stdin
        format: 'wide' or 'long'
        forecasters: Forecaster names to keep (default: all)

    Returns:
        DatasetLoadResult with the complete-case dataset or error
    """
    try:
        dataset = read_dataset(path, format)
        if forecasters:
            dataset = dataset.select(forecasters)
        complete = complete_cases(dataset)
        return DatasetLoadResult(
            success=True,
            dataset=complete,
            rows=complete.n_rows,
            dropped_rows=dataset.n_rows - complete.n_rows,
            forecasters=complete.names,
        )
    except Exception as e:
        return _failure(DatasetLoadResult, e, "Loading dataset")


def decompose(dataset: Dataset, rule: ScoringRule, names: Optional[Sequence[str]] = None) -> DecompositionResult:
    """CORP decomposition per forecaster plus the MCB-DSC plot model"""
    logger.info("=" * 60)
    logger.info(f"CORP DECOMPOSITION: {rule.name}")
    logger.info("=" * 60)
    try:
        start_time = time.time()
        records = dataset.records(names)
        decomps = [corp_decomposition(rule, record) for record in records]
        plot = mcb_dsc_plot(decomps)
        for d in decomps:
            logger.info(f"  {d.name}: mean={d.mean.to_json()} mcb={d.mcb.to_json()} dsc={d.dsc:.6f} unc={d.unc:.6f}")
        logger.info(f"Decomposed {len(decomps)} forecaster(s) in {time.time() - start_time:.2f}s")
        return DecompositionResult(success=True, rule=rule, decompositions=decomps, plot=plot)
    except Exception as e:
        return _failure(DecompositionResult, e, "Decomposition")


def select_forecasters(dataset: Dataset, rule: ScoringRule, top: int, by: str = "mean") -> List[str]:
    """Names of the top forecasters in an MCB-DSC ranking"""
    decomps = [corp_decomposition(rule, record) for record in dataset.records()]
    return [d.name for d in rank_forecasters(decomps, by=by, top=top)]


def build_triptych(
    dataset: Dataset,
    names: Optional[Sequence[str]] = None,
    level: Optional[float] = None,
    replicates: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    concave: bool = True,
    histogram_bins: Optional[int] = None,
    bands: bool = True,
    panels: Sequence[str] = TRIPTYCH_PANELS,
) -> TriptychResult:
    """
    Build the three diagnostics for every selected forecaster.

    Args:
        dataset: Complete-case dataset
        names: Forecasters to include (default: all)
        level, replicates, seed, workers: Consistency band settings (default: Settings)
        concave: Draw concave (recalibrated) ROC curves instead of raw ones
        histogram_bins: Display bins of the forecast histograms
        bands: Compute consistency bands
        panels: Which of murphy, reliability and roc to build

    Returns:
        TriptychResult with the curves or error
    """
    settings = Settings()
    level = settings.LEVEL if level is None else level
    replicates = settings.RESAMPLES if replicates is None else replicates
    seed = settings.SEED if seed is None else seed
    workers = settings.WORKERS if workers is None else workers
    histogram_bins = settings.HISTOGRAM_BINS if histogram_bins is None else histogram_bins

    logger.info("=" * 60)
    logger.info("BUILDING TRIPTYCH")
    logger.info("=" * 60)
    try:
        start_time = time.time()
        result = TriptychResult(success=True)
        for record in dataset.records(names):
            if "murphy" in panels:
                result.murphy.append(murphy_curve(record))
            if "reliability" in panels:
                band = consistency_band(record.forecasts, level, replicates, seed, workers) if bands else None
                result.reliability.append(reliability_curve(record, histogram_bins, band))
            if "roc" in panels:
                result.roc.append(concave_roc(record) if concave else roc_curve(record))
        result.metadata = {
            "rows": dataset.n_rows,
            "level": level if bands else None,
            "replicates": replicates if bands else None,
            "seed": seed,
            "concave": concave,
            "pointwise_band": True,
        }
        logger.info(f"{', '.join(panels)} for {len(names or dataset.names)} forecaster(s) in {time.time() - start_time:.2f}s")
        return result
    except Exception as e:
        return _failure(TriptychResult, e, "Triptych")


def compare_pair(
    first: ForecastRecord,
    second: ForecastRecord,
    tol: Optional[float] = None,
    recalibrate_first: bool = True,
) -> CrossingResult:
    """Sign changes and dominance of two forecasts on shared outcomes"""
    tol = Settings().SIGN_TOL if tol is None else tol
    try:
        report = crossing_report(first, second, tol=tol, recalibrate=recalibrate_first)
        if report.calibrated and report.murphy_sign_changes != report.roc_sign_changes:
            logger.warning(
                f"Murphy and ROC sign changes differ for calibrated pair: "
                f"{report.murphy_sign_changes} vs {report.roc_sign_changes}"
            )
        return CrossingResult(success=True, report=report)
    except Exception as e:
        return _failure(CrossingResult, e, "Crossing analysis")


def simulate(scenario: str, n: Optional[int] = None, seed: Optional[int] = None, workers: int = 1) -> SimulationResult:
    settings = Settings()
    try:
        sample = sample_scenario(
            scenario,
            settings.SIM_N if n is None else n,
            settings.SEED if seed is None else seed,
            workers,
        )
        return SimulationResult(success=True, sample=sample)
    except Exception as e:
        return _failure(SimulationResult, e, "Simulation")


def summarize(dataset: Dataset, rules: Sequence[ScoringRule], names: Optional[Sequence[str]] = None) -> SummaryResult:
    try:
        return SummaryResult(success=True, summaries=performance_summary(dataset, rules, names))
    except Exception as e:
        return _failure(SummaryResult, e, "Performance summary")


def recalibrated_records(dataset: Dataset, names: Sequence[str]) -> List[ForecastRecord]:
    """PAV-recalibrated copies of the named forecasters"""
    return [recalibrate(record) for record in dataset.records(names)]
