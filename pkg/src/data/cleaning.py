import logging

from .models import Dataset
from ..exceptions import DataError

logger = logging.getLogger(__name__)


def complete_cases(dataset: Dataset) -> Dataset:
    """Keep only rows where no forecaster is missing, in their original order"""
    keep = [
        i for i in range(dataset.n_rows)
        if all(values[i] is not None for values in dataset.columns.values())
    ]
    if not keep:
        raise DataError("no jointly complete rows")

    dropped = dataset.n_rows - len(keep)
    if dropped == 0:
        return dataset

    logger.warning(f"Dropped {dropped} of {dataset.n_rows} rows with missing forecasts")
    return Dataset.create(
        [dataset.outcomes[i] for i in keep],
        {name: [values[i] for i in keep] for name, values in dataset.columns.items()},
    )
