from .models import ForecastRecord, Dataset
from .loader import parse_csv, read_dataset, dataset_to_csv
from .cleaning import complete_cases
from .empirical import EmpiricalDistribution, ClassPriors, empirical_distribution, class_priors

__all__ = [
    "ForecastRecord",
    "Dataset",
    "parse_csv",
    "read_dataset",
    "dataset_to_csv",
    "complete_cases",
    "EmpiricalDistribution",
    "ClassPriors",
    "empirical_distribution",
    "class_priors",
]
