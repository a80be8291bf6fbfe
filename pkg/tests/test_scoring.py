import json
import math

import numpy as np
import pytest

from src.data import ForecastRecord
from src.exceptions import ScoringError
from src.scoring import (
    INFINITY,
    ExtendedReal,
    ScoringRule,
    elementary_score,
    mean_score,
    mixture_score,
    parse_rule,
    savage_score,
    score,
)

BRIER = ScoringRule.brier()
LOG = ScoringRule.log()
MISCLASS = ScoringRule.zero_one()

RULES = [
    BRIER,
    LOG,
    MISCLASS,
    ScoringRule.elementary(0.3),
    ScoringRule.beta_family(2.0, 3.0),
    ScoringRule.beta_family(0.5, 0.5),
]

CASES = [(0.0, 0), (0.25, 0), (0.25, 1), (0.5, 1), (0.7, 0), (0.7, 1), (0.3, 1), (0.95, 0), (1.0, 1)]


class TestClosedForm:
    def test_brier(self):
        assert score(BRIER, 0.7, 1) == pytest.approx(0.09, abs=1e-15)

    def test_log(self):
        assert score(LOG, 0.5, 1) == math.log(2.0)

    def test_log_infinite(self):
        value = score(LOG, 0.0, 1)
        assert value.is_infinite
        assert score(LOG, 1.0, 0).is_infinite
        assert score(LOG, 1.0, 1) == 0.0

    @pytest.mark.parametrize("theta, x, y, expected", [
        (0.5, 0.7, 0, 1.0),
        (0.3, 0.3, 1, 0.42),
        (0.25, 0.1, 1, 1.5),
        (0.25, 0.1, 0, 0.0),
    ])
    def test_elementary(self, theta, x, y, expected):
        assert elementary_score(theta, x, y) == pytest.approx(expected, abs=1e-15)
        assert score(ScoringRule.elementary(theta), x, y) == pytest.approx(expected, abs=1e-15)

    def test_misclass_is_elementary_half(self):
        for x, y in CASES:
            assert score(MISCLASS, x, y) == elementary_score(0.5, x, y)

    def test_beta_one_one_is_brier(self):
        rule = ScoringRule.beta_family(1.0, 1.0)
        for x, y in CASES:
            assert score(rule, x, y) == pytest.approx(float(score(BRIER, x, y)), abs=1e-12)

    def test_domain_errors(self):
        with pytest.raises(ScoringError):
            score(BRIER, 1.5, 1)
        with pytest.raises(ScoringError):
            score(BRIER, 0.5, 2)
        with pytest.raises(ScoringError):
            elementary_score(0.0, 0.5, 1)


class TestMeanScore:
    def test_brier(self):
        record = ForecastRecord.create([0.5, 0.5], [0, 1])
        assert mean_score(BRIER, record) == 0.25

    def test_misclass(self):
        record = ForecastRecord.create([0.7, 0.2], [0, 0])
        assert mean_score(MISCLASS, record) == 0.5

    def test_infinite_log(self):
        record = ForecastRecord.create([0.0, 0.6], [1, 1])
        assert mean_score(LOG, record).is_infinite


class TestSavage:
    def test_examples(self):
        assert savage_score(BRIER, 0.7, 1) == pytest.approx(0.09, abs=1e-15)
        assert savage_score(LOG, 0.25, 0) == pytest.approx(0.2876820724, abs=1e-10)
        assert savage_score(ScoringRule.elementary(0.5), 0.7, 0) == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("rule", RULES, ids=lambda r: r.name)
    def test_matches_closed_form(self, rule):
        for x, y in CASES:
            direct = score(rule, x, y)
            savage = savage_score(rule, x, y)
            if direct.is_infinite:
                assert savage.is_infinite
            else:
                assert float(savage) == pytest.approx(float(direct), abs=1e-12)

    def test_elementary_tie(self):
        # the subgradient at the kink reproduces 2 theta (1 - theta)
        rule = ScoringRule.elementary(0.3)
        assert savage_score(rule, 0.3, 1) == pytest.approx(0.42, abs=1e-15)
        assert savage_score(rule, 0.3, 0) == pytest.approx(0.42, abs=1e-15)


class TestMixture:
    def test_brier_gauss_legendre(self):
        assert mixture_score(BRIER, 0.7, 1, quadrature=10_000) == pytest.approx(0.09, abs=1e-6)

    def test_log_adaptive(self):
        assert mixture_score(LOG, 0.5, 1) == pytest.approx(math.log(2.0), abs=1e-6)

    def test_beta_one_one(self):
        assert mixture_score(ScoringRule.beta_family(1.0, 1.0), 0.3, 0) == pytest.approx(0.09, abs=1e-6)

    @pytest.mark.parametrize("rule", [BRIER, LOG, ScoringRule.beta_family(2.0, 3.0), ScoringRule.beta_family(0.5, 0.5)],
                             ids=lambda r: r.name)
    def test_converges_to_closed_form(self, rule):
        for x, y in [(0.25, 0), (0.25, 1), (0.7, 1), (0.95, 0), (0.0, 0), (1.0, 1)]:
            assert mixture_score(rule, x, y) == pytest.approx(float(score(rule, x, y)), abs=1e-6)

    def test_log_divergent(self):
        with pytest.raises(ScoringError, match="diverges"):
            mixture_score(LOG, 0.0, 1)

    def test_point_mass_has_no_density(self):
        with pytest.raises(ScoringError):
            mixture_score(MISCLASS, 0.5, 1)

    def test_quadrature_nodes(self):
        with pytest.raises(ScoringError):
            mixture_score(BRIER, 0.5, 1, quadrature=0)


class TestRuleNames:
    @pytest.mark.parametrize("name", ["brier", "log", "misclass", "elementary:0.3", "beta:2:3", "beta:0.5:1.5"])
    def test_round_trip(self, name):
        assert parse_rule(name).name == name

    def test_misclass(self):
        assert parse_rule("misclass") == MISCLASS
        assert MISCLASS.threshold == 0.5

    @pytest.mark.parametrize("name", ["crps", "elementary", "elementary:1.5", "beta:1", "beta:-1:2", "brier:2"])
    def test_invalid(self, name):
        with pytest.raises(ScoringError):
            parse_rule(name)


class TestExtendedReal:
    def test_infinity_json(self):
        assert INFINITY.to_json() == "inf"
        assert ExtendedReal.from_json("inf").is_infinite
        assert json.dumps({"mean": ExtendedReal(0.5).to_json()}) == '{"mean": 0.5}'

    def test_arithmetic(self):
        assert (ExtendedReal(1.0) + INFINITY).is_infinite
        assert isinstance(ExtendedReal(1.0) + 2.0, ExtendedReal)

    def test_invalid_values(self):
        with pytest.raises(ValueError):
            ExtendedReal(float("nan"))
        with pytest.raises(ValueError):
            ExtendedReal(-math.inf)
        with pytest.raises(ValueError):
            ExtendedReal("many")

    def test_numpy_interop(self):
        assert np.isinf(INFINITY)


class TestPropriety:
    GRID = np.round(np.arange(0.05, 0.96, 0.05), 2)

    @staticmethod
    def expected(rule, p, x):
        return p * float(score(rule, x, 1)) + (1.0 - p) * float(score(rule, x, 0))

    @pytest.mark.parametrize("rule", RULES, ids=lambda r: r.name)
    def test_truth_minimizes_expected_score(self, rule):
        for p in self.GRID:
            truthful = self.expected(rule, p, p)
            for x in self.GRID:
                assert truthful <= self.expected(rule, p, x) + 1e-12

    @pytest.mark.parametrize("rule", [BRIER, LOG], ids=lambda r: r.name)
    def test_strict_for_brier_and_log(self, rule):
        for p in self.GRID:
            truthful = self.expected(rule, p, p)
            for x in self.GRID[self.GRID != p]:
                assert self.expected(rule, p, x) > truthful + 1e-9
