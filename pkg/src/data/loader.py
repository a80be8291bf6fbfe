import io
import sys
import math
import logging
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Union

import pandas as pd

from .models import Dataset
from ..exceptions import DataError

logger = logging.getLogger(__name__)

MISSING_MARKERS = ("", "NA")
LONG_COLUMNS = ("forecaster", "forecast", "outcome")


def _parse_forecast(cell, line: int, column: str) -> Optional[float]:
    if not isinstance(cell, str):
        raise DataError(f"malformed row at line {line}: missing field for '{column}'")
    cell = cell.strip()
    if cell in MISSING_MARKERS:
        return None
    try:
        value = float(cell)
    except ValueError:
        raise DataError(f"line {line}, column '{column}': not a number: {cell!r}")
    if not math.isfinite(value) or value < 0.0 or value > 1.0:
        raise DataError(f"line {line}, column '{column}': forecast out of range [0,1]: {cell}")
    return value


def _parse_outcome(cell, line: int) -> int:
    if not isinstance(cell, str):
        raise DataError(f"malformed row at line {line}: missing outcome")
    cell = cell.strip()
    try:
        value = float(cell)
    except ValueError:
        raise DataError(f"line {line}: outcome not in {{0,1}}: {cell!r}")
    if value not in (0.0, 1.0):
        raise DataError(f"line {line}: outcome not in {{0,1}}: {cell!r}")
    return int(value)


def _read_frame(source: Union[str, TextIO]) -> pd.DataFrame:
    stream = io.StringIO(source) if isinstance(source, str) else source
    try:
        frame = pd.read_csv(stream, dtype=str, keep_default_na=False, sep=",")
    except pd.errors.EmptyDataError:
        raise DataError("empty file")
    except pd.errors.ParserError as e:
        raise DataError(f"malformed row: {e}")

    frame.columns = [str(c).strip() for c in frame.columns]
    if frame.empty:
        raise DataError("no data rows")
    return frame


def _parse_wide(frame: pd.DataFrame) -> Dataset:
    header = list(frame.columns)
    if header[0] != "y":
        raise DataError(f"wide format expects the outcome column 'y' first, found '{header[0]}'")
    names = header[1:]
    if not names:
        raise DataError("no forecast columns")
    if len(set(names)) != len(names):
        raise DataError("duplicate forecaster names in header")

    outcomes: List[int] = []
    columns: Dict[str, List[Optional[float]]] = {name: [] for name in names}
    for row_idx, row in enumerate(frame.itertuples(index=False, name=None)):
        line = row_idx + 2
        outcomes.append(_parse_outcome(row[0], line))
        for name, cell in zip(names, row[1:]):
            columns[name].append(_parse_forecast(cell, line, name))

    return Dataset.create(outcomes, columns)


def _parse_long(frame: pd.DataFrame) -> Dataset:
    missing = [c for c in LONG_COLUMNS if c not in frame.columns]
    if missing:
        raise DataError(f"long format expects columns {', '.join(LONG_COLUMNS)}; missing {', '.join(missing)}")

    # Cases are aligned by their order of appearance within each forecaster
    values: Dict[str, List[Optional[float]]] = {}
    outcomes: List[int] = []
    for row_idx, (name, cell, outcome_cell) in enumerate(
        frame[list(LONG_COLUMNS)].itertuples(index=False, name=None)
    ):
        line = row_idx + 2
        if not isinstance(name, str) or not name.strip():
            raise DataError(f"line {line}: empty forecaster name")
        series = values.setdefault(name.strip(), [])
        case = len(series)
        outcome = _parse_outcome(outcome_cell, line)
        if case == len(outcomes):
            outcomes.append(outcome)
        elif outcomes[case] != outcome:
            raise DataError(
                f"line {line}: outcome {outcome} for case {case + 1} of '{name}' "
                f"disagrees with outcome {outcomes[case]} from another forecaster"
            )
        series.append(_parse_forecast(cell, line, name))

    n = len(outcomes)
    columns = {name: series + [None] * (n - len(series)) for name, series in values.items()}
    return Dataset.create(outcomes, columns)


def parse_csv(source: Union[str, TextIO], format: str = "wide") -> Dataset:
    """
        Parse wide (`y,<name1>,...`) or long (`forecaster,forecast,outcome`) CSV text.
        Empty cells and the literal NA are kept as missing values.
    """
    frame = _read_frame(source)
    if format == "wide":
        dataset = _parse_wide(frame)
    elif format == "long":
        dataset = _parse_long(frame)
    else:
        raise DataError(f"unknown CSV format '{format}' (expected wide or long)")

    logger.debug(
        f"Parsed {dataset.n_rows} rows for {len(dataset.names)} forecaster(s), "
        f"{dataset.missing_count()} missing cell(s)"
    )
    return dataset


def read_dataset(path: Optional[str] = None, format: str = "wide") -> Dataset:
    """Read a dataset from a file path, or from stdin when path is None or '-'"""
    if path is None or path == "-":
        logger.debug("Reading dataset from stdin")
        return parse_csv(sys.stdin.read(), format)

    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as e:
        raise DataError(f"cannot read {file_path}: {e.strerror or e}") from e
    logger.info(f"Reading dataset from {file_path}")
    return parse_csv(text, format)


def dataset_to_csv(dataset: Dataset) -> str:
    """Wide CSV text that parse_csv reads back to the same dataset"""
    frame = pd.DataFrame({"y": dataset.outcomes})
    for name, values in dataset.columns.items():
        frame[name] = pd.Series(values, dtype="float64")
    return frame.to_csv(index=False, na_rep="NA", lineterminator="\n")
