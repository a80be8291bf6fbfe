import io

import numpy as np
import pytest
from pydantic import ValidationError

from src.analysis import CrossingReport
from src.data import (
    ClassPriors,
    Dataset,
    ForecastRecord,
    class_priors,
    complete_cases,
    dataset_to_csv,
    empirical_distribution,
    parse_csv,
    read_dataset,
)
from src.exceptions import DataError
from src.figures import SeriesStyle
from src.scoring import ScoringRule


class TestParseCsv:
    def test_wide(self):
        dataset = parse_csv("y,A\n1,0.7\n0,0.2")
        assert dataset.outcomes == [1, 0]
        assert dataset.columns == {"A": [0.7, 0.2]}

    def test_out_of_range(self):
        with pytest.raises(DataError, match="out of range"):
            parse_csv("y,A\n1,1.2")

    def test_missing_cell(self):
        dataset = parse_csv("y,A,B\n1,0.7,\n0,0.2,0.1")
        assert dataset.columns["B"] == [None, 0.1]
        assert dataset.missing_count("B") == 1

    def test_na_marker(self):
        dataset = parse_csv("y,A\n1,NA\n0,0.4")
        assert dataset.columns["A"] == [None, 0.4]

    def test_bad_outcome(self):
        with pytest.raises(DataError, match="outcome"):
            parse_csv("y,A\n2,0.5")

    def test_not_a_number(self):
        with pytest.raises(DataError, match="not a number"):
            parse_csv("y,A\n1,high")

    def test_empty_input(self):
        with pytest.raises(DataError, match="empty file"):
            parse_csv("")

    def test_header_only(self):
        with pytest.raises(DataError, match="no data rows"):
            parse_csv("y,A\n")

    def test_outcome_column_first(self):
        with pytest.raises(DataError, match="'y' first"):
            parse_csv("A,y\n0.5,1")

    def test_short_row(self):
        with pytest.raises(DataError, match="malformed row"):
            parse_csv("y,A,B\n1,0.5,0.5\n0,0.5")

    def test_long_format(self):
        text = "forecaster,forecast,outcome\nA,0.7,1\nB,0.6,1\nA,0.2,0\nB,0.3,0\n"
        dataset = parse_csv(text, format="long")
        assert dataset.outcomes == [1, 0]
        assert dataset.columns == {"A": [0.7, 0.2], "B": [0.6, 0.3]}

    def test_long_format_pads_short_series(self):
        text = "forecaster,forecast,outcome\nA,0.7,1\nA,0.2,0\nB,0.6,1\n"
        dataset = parse_csv(text, format="long")
        assert dataset.columns["B"] == [0.6, None]

    def test_long_format_disagreeing_outcomes(self):
        text = "forecaster,forecast,outcome\nA,0.7,1\nB,0.6,0\n"
        with pytest.raises(DataError, match="disagrees"):
            parse_csv(text, format="long")

    def test_unknown_format(self):
        with pytest.raises(DataError, match="unknown CSV format"):
            parse_csv("y,A\n1,0.5", format="tall")

    def test_csv_round_trip(self, flare_dataset):
        assert parse_csv(dataset_to_csv(flare_dataset)) == flare_dataset


class TestReadDataset:
    def test_from_file(self, flare_file, flare_dataset):
        assert read_dataset(str(flare_file)) == flare_dataset

    def test_from_stdin(self, monkeypatch, flare_dataset):
        monkeypatch.setattr("sys.stdin", io.StringIO(dataset_to_csv(flare_dataset)))
        assert read_dataset("-") == flare_dataset

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError, match="cannot read"):
            read_dataset(str(tmp_path / "absent.csv"))


class TestCompleteCases:
    def test_drops_incomplete_rows(self):
        dataset = parse_csv("y,A,B\n1,0.7,0.6\n0,0.2,\n1,0.9,0.8")
        complete = complete_cases(dataset)
        assert complete.n_rows == 2
        assert complete.outcomes == [1, 1]
        assert complete.columns["B"] == [0.6, 0.8]

    def test_identity_without_missing(self):
        dataset = parse_csv("y,A\n1,0.7\n0,0.2")
        assert complete_cases(dataset) is dataset

    def test_no_complete_rows(self):
        dataset = parse_csv("y,A,B\n1,0.7,\n0,,0.2")
        with pytest.raises(DataError, match="no jointly complete rows"):
            complete_cases(dataset)

    def test_selection_before_filtering(self, flare_dataset):
        # the missing SIDC cell only matters when SIDC is selected
        assert complete_cases(flare_dataset.select(["NOAA", "ASSA"])).n_rows == 6
        assert complete_cases(flare_dataset).n_rows == 5

    def test_idempotent(self, flare_dataset):
        once = complete_cases(flare_dataset)
        twice = complete_cases(once)
        assert twice.outcomes == once.outcomes
        assert twice.columns == once.columns


class TestModels:
    def test_record_validation(self):
        with pytest.raises(DataError):
            ForecastRecord.create([0.5, 0.5], [1])
        with pytest.raises(DataError):
            ForecastRecord.create([], [])
        with pytest.raises(DataError):
            ForecastRecord.create([float("nan")], [1])

    def test_record_with_missing_values(self, flare_dataset):
        with pytest.raises(DataError, match="missing values"):
            flare_dataset.record("SIDC")

    def test_unknown_forecaster(self, flare_dataset):
        with pytest.raises(DataError, match="unknown forecaster"):
            flare_dataset.select(["NASA"])

    def test_dataset_requires_rows(self):
        with pytest.raises(DataError):
            Dataset.create([], {})

    def test_models_are_frozen(self):
        record = ForecastRecord.create([0.2, 0.7], [0, 1])
        for model in (ForecastRecord, Dataset, ScoringRule, SeriesStyle, CrossingReport, ClassPriors):
            assert model.model_config["frozen"] is True
        with pytest.raises(ValidationError):
            record.name = "other"


class TestEmpirical:
    def test_cdf_and_quantile(self):
        dist = empirical_distribution([0.2, 0.4, 0.4, 0.9])
        assert dist.cdf(0.1) == 0.0
        assert dist.cdf(0.4) == 0.75
        assert dist.cdf(1.0) == 1.0
        assert dist.quantile(0.25) == 0.2
        assert dist.quantile(0.5) == 0.4
        assert dist.quantile(1.0) == 0.9
        np.testing.assert_allclose(dist.masses, [0.25, 0.5, 0.25])

    def test_quantile_inverts_cdf(self):
        values = [0.1, 0.4, 0.6, 0.9]
        dist = empirical_distribution(values)
        assert dist.quantile(0.25) == 0.1
        assert dist.quantile(0.26) == 0.4
        for v in values:
            assert dist.quantile(dist.cdf(v)) == v
        alphas = np.linspace(0.01, 1.0, 100)
        assert np.all(dist.cdf(dist.quantile(alphas)) >= alphas)

    def test_quantile_domain(self):
        with pytest.raises(ValueError):
            empirical_distribution([0.5]).quantile(0.0)

    def test_empty(self):
        with pytest.raises(DataError):
            empirical_distribution([])

    def test_class_priors(self):
        priors = class_priors([0, 1, 1, 1])
        assert priors.r == 0.75
        assert priors.pi0 == 0.25
        assert not priors.degenerate

    def test_degenerate_priors(self):
        priors = class_priors([0, 0])
        assert priors.r == 0.0
        assert priors.degenerate
