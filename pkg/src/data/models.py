import math
from typing import Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..exceptions import DataError


def _check_forecast_values(values: Sequence[Optional[float]], label: str) -> None:
    for i, v in enumerate(values):
        if v is None:
            continue
        if not math.isfinite(v) or v < 0.0 or v > 1.0:
            raise ValueError(f"{label}: forecast out of range [0,1] at row {i + 1}: {v!r}")


def _check_outcome_values(values: Sequence[int]) -> None:
    for i, v in enumerate(values):
        if v not in (0, 1):
            raise ValueError(f"outcome not in {{0,1}} at row {i + 1}: {v!r}")


class ForecastRecord(BaseModel):
    """
        Probability forecasts x_1..x_n paired with binary outcomes y_1..y_n.
    """
    forecasts: List[float]
    outcomes: List[int]
    name: str = "forecast"

    model_config = ConfigDict(frozen=True)

    @field_validator("forecasts")
    @classmethod
    def _forecasts_in_unit_interval(cls, v: List[float]) -> List[float]:
        _check_forecast_values(v, "forecasts")
        return v

    @field_validator("outcomes")
    @classmethod
    def _outcomes_binary(cls, v: List[int]) -> List[int]:
        _check_outcome_values(v)
        return v

    @model_validator(mode="after")
    def _aligned(self) -> "ForecastRecord":
        if len(self.forecasts) != len(self.outcomes):
            raise ValueError(
                f"forecasts ({len(self.forecasts)}) and outcomes ({len(self.outcomes)}) differ in length"
            )
        if len(self.forecasts) == 0:
            raise ValueError("record must contain at least one case")
        return self

    @classmethod
    def create(cls, forecasts, outcomes, name: str = "forecast") -> "ForecastRecord":
        """Build a record from arrays or lists, raising DataError on invalid input"""
        try:
            return cls(
                forecasts=np.asarray(forecasts, dtype=float).tolist(),
                outcomes=np.asarray(outcomes).tolist(),
                name=name,
            )
        except ValidationError as e:
            raise DataError(f"invalid record '{name}': {e.errors()[0]['msg']}") from e
        except (TypeError, ValueError) as e:
            raise DataError(f"invalid record '{name}': {e}") from e

    @property
    def n(self) -> int:
        return len(self.forecasts)

    @property
    def x(self) -> np.ndarray:
        return np.asarray(self.forecasts, dtype=float)

    @property
    def y(self) -> np.ndarray:
        return np.asarray(self.outcomes, dtype=np.int64)

    def with_forecasts(self, forecasts, name: Optional[str] = None) -> "ForecastRecord":
        """Same outcomes, new forecast values"""
        return ForecastRecord.create(forecasts, self.outcomes, name or self.name)


class Dataset(BaseModel):
    """
        Shared outcomes with one named forecast column per forecaster.
        Missing cells are stored as None.
    """
    outcomes: List[int]
    columns: Dict[str, List[Optional[float]]] = Field(default_factory=dict)

    model_config = ConfigDict(frozen=True)

    @field_validator("outcomes")
    @classmethod
    def _outcomes_binary(cls, v: List[int]) -> List[int]:
        if not v:
            raise ValueError("dataset has no rows")
        _check_outcome_values(v)
        return v

    @model_validator(mode="after")
    def _columns_aligned(self) -> "Dataset":
        n = len(self.outcomes)
        for name, values in self.columns.items():
            if len(values) != n:
                raise ValueError(f"column '{name}' has {len(values)} rows, outcomes have {n}")
            _check_forecast_values(values, f"column '{name}'")
        return self

    @classmethod
    def create(cls, outcomes, columns: Dict[str, Sequence[Optional[float]]]) -> "Dataset":
        try:
            return cls(
                outcomes=[int(v) for v in outcomes],
                columns={name: list(values) for name, values in columns.items()},
            )
        except ValidationError as e:
            raise DataError(f"invalid dataset: {e.errors()[0]['msg']}") from e

    @property
    def names(self) -> List[str]:
        return list(self.columns.keys())

    @property
    def n_rows(self) -> int:
        return len(self.outcomes)

    def missing_count(self, name: Optional[str] = None) -> int:
        names = [name] if name else self.names
        return sum(v is None for n in names for v in self.columns[n])

    def select(self, names: Sequence[str]) -> "Dataset":
        """Dataset restricted to the given forecasters, in the given order"""
        unknown = [n for n in names if n not in self.columns]
        if unknown:
            raise DataError(f"unknown forecaster(s): {', '.join(unknown)}; available: {', '.join(self.names)}")
        return Dataset.create(self.outcomes, {n: self.columns[n] for n in names})

    def record(self, name: str) -> ForecastRecord:
        """ForecastRecord for one forecaster; the column must be complete"""
        if name not in self.columns:
            raise DataError(f"unknown forecaster '{name}'; available: {', '.join(self.names)}")
        values = self.columns[name]
        if any(v is None for v in values):
            raise DataError(f"column '{name}' has missing values; restrict to complete cases first")
        return ForecastRecord.create(values, self.outcomes, name)

    def records(self, names: Optional[Sequence[str]] = None) -> List[ForecastRecord]:
        return [self.record(n) for n in (names or self.names)]
