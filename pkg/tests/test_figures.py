import pytest

from src.data import ForecastRecord
from src.decomposition import corp_decomposition, mcb_dsc_plot
from src.exceptions import FigureError
from src.figures import (
    PALETTE,
    FigureSpec,
    render_mcbdsc,
    render_murphy,
    render_reliability,
    render_roc,
    render_triptych,
)
from src.murphy import murphy_curve
from src.reliability import consistency_band, reliability_curve
from src.roc import concave_roc, roc_curve
from src.scoring import ScoringRule

Y = [0, 1, 0, 1, 1, 0, 0, 1]


@pytest.fixture
def pair():
    return [
        ForecastRecord.create([0.1, 0.8, 0.3, 0.6, 0.9, 0.2, 0.4, 0.7], Y, "alpha"),
        ForecastRecord.create([0.5, 0.5, 0.2, 0.3, 0.8, 0.6, 0.1, 0.9], Y, "beta & co"),
    ]


def triptych_svg(records):
    spec = FigureSpec.for_series("triptych", [r.name for r in records])
    diagrams = [
        reliability_curve(r, band=consistency_band(r.forecasts, replicates=50, seed=1)) for r in records
    ]
    return render_triptych(spec, [murphy_curve(r) for r in records], diagrams, [concave_roc(r) for r in records])


def test_triptych_is_deterministic(pair):
    first = triptych_svg(pair)
    assert first == triptych_svg(pair)
    assert first.startswith("<svg ") and first.endswith("</svg>\n")
    assert "Murphy curve" in first and "Reliability diagram" in first and "ROC curve" in first


def test_names_are_escaped(pair):
    svg = triptych_svg(pair)
    assert "beta &amp; co" in svg
    assert "beta & co" not in svg


def test_series_colors(pair):
    spec = FigureSpec.for_series("roc", [r.name for r in pair], width=520, height=440)
    assert [s.color for s in spec.series] == list(PALETTE[:2])
    svg = render_roc(spec, [roc_curve(r) for r in pair])
    assert PALETTE[0] in svg and PALETTE[1] in svg
    assert "AUC" in svg


def test_single_panels(pair):
    murphy = render_murphy(FigureSpec.for_series("murphy", ["alpha"], width=520, height=440), [murphy_curve(pair[0])])
    reliability = render_reliability(
        FigureSpec.for_series("reliability", ["alpha"], width=520, height=440, support_range=True),
        [reliability_curve(pair[0])],
    )
    assert 'width="520"' in murphy and "<polyline" in murphy
    assert "<polyline" in reliability


def test_mcbdsc(pair):
    plot = mcb_dsc_plot([corp_decomposition(ScoringRule.brier(), r) for r in pair])
    svg = render_mcbdsc(FigureSpec.for_series("mcbdsc", [r.name for r in pair], width=520, height=440), plot)
    assert "MCB-DSC plot (brier)" in svg and svg.count("<circle") >= 2
    assert "best constant forecast" in svg


def test_mcbdsc_axis_ranges(pair):
    plot = mcb_dsc_plot([corp_decomposition(ScoringRule.brier(), r) for r in pair])
    zoomed = FigureSpec.for_series("mcbdsc", [r.name for r in pair], width=520, height=440, x_range=(0.0, 0.44))
    svg = render_mcbdsc(zoomed, plot)
    assert ">0.44<" in svg and ">0.11<" in svg
    # origin outside the frame carries no label
    shifted = FigureSpec.for_series("mcbdsc", [r.name for r in pair], width=520, height=440, x_range=(0.01, 0.44))
    assert "best constant forecast" not in render_mcbdsc(shifted, plot)


@pytest.mark.parametrize("kwargs", [
    {"width": 50},
    {"y_range": (1.0, 0.0)},
])
def test_invalid_spec(kwargs):
    with pytest.raises(FigureError):
        FigureSpec.for_series("murphy", ["a"], **kwargs)


def test_duplicate_series():
    with pytest.raises(FigureError):
        FigureSpec.for_series("roc", ["a", "a"])


def test_triptych_needs_triptych_spec(pair):
    with pytest.raises(FigureError):
        render_triptych(FigureSpec.for_series("roc", ["alpha"]), [], [], [])
