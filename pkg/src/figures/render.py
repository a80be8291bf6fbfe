import logging
from typing import List, Optional, Sequence, Tuple

from .spec import FigureSpec
from .svg import PanelFrame, SvgCanvas, draw_axes
from ..decomposition.mcbdsc import McbDscPlot
from ..exceptions import FigureError
from ..murphy.curve import MurphyCurve
from ..reliability.diagram import ReliabilityDiagram
from ..roc.curve import RocCurve

logger = logging.getLogger(__name__)

MARGIN_LEFT = 60
MARGIN_RIGHT = 20
MARGIN_TOP = 30
MARGIN_BOTTOM = 50


def _frames(spec: FigureSpec, count: int) -> List[Tuple[float, float, float, float]]:
    """(left, top, width, height) of each panel, side by side"""
    slot = spec.width / count
    return [
        (i * slot + MARGIN_LEFT, MARGIN_TOP, slot - MARGIN_LEFT - MARGIN_RIGHT, spec.height - MARGIN_TOP - MARGIN_BOTTOM)
        for i in range(count)
    ]


def _legend(canvas: SvgCanvas, spec: FigureSpec, frame: PanelFrame, names: Sequence[str],
            labels: Optional[Sequence[str]] = None) -> None:
    for i, (name, label) in enumerate(zip(names, labels or names)):
        style = spec.style(name)
        y = frame.top + 14 + 14 * i
        x = frame.left + 8
        canvas.line((x, y - 4), (x + 18, y - 4), stroke=style.color, width=2.0, dash=style.dash)
        canvas.text((x + 22, y), label, size=10)


def draw_murphy(canvas: SvgCanvas, spec: FigureSpec, box: Tuple[float, float, float, float],
                curves: Sequence[MurphyCurve]) -> None:
    top = max([v for c in curves for _, v in c.polyline()] + [0.05])
    frame = PanelFrame(*box, x_range=(0.0, 1.0), y_range=spec.y_range or (0.0, top * 1.05))
    draw_axes(canvas, frame, "Murphy curve", "threshold θ", "mean elementary score")
    for curve in curves:
        style = spec.style(curve.name)
        canvas.polyline(frame.map_all(curve.polyline()), stroke=style.color, dash=style.dash)
        for theta, value in curve.marked_knots():
            canvas.circle(frame.map(theta, value), 2.5, fill=style.color)
    _legend(canvas, spec, frame, [c.name for c in curves])


def draw_reliability(canvas: SvgCanvas, spec: FigureSpec, box: Tuple[float, float, float, float],
                     diagrams: Sequence[ReliabilityDiagram]) -> None:
    x_range = spec.x_range or (0.0, 1.0)
    if spec.support_range and diagrams:
        lo = min(d.support_range()[0] for d in diagrams)
        hi = max(d.support_range()[1] for d in diagrams)
        if hi > lo:
            x_range = (lo, hi)
    frame = PanelFrame(*box, x_range=x_range, y_range=(0.0, 1.0))
    draw_axes(canvas, frame, "Reliability diagram", "forecast value", "CEP")
    clip = canvas.clip_rect(frame.left, frame.top, frame.width, frame.height)
    canvas.begin_group(clip)

    for d in diagrams:
        if d.band is not None:
            style = spec.style(d.name)
            upper = list(zip(d.band.forecasts.tolist(), d.band.upper.tolist()))
            lower = list(zip(d.band.forecasts.tolist(), d.band.lower.tolist()))
            canvas.polygon(frame.map_all(upper + lower[::-1]), fill=style.color, opacity=0.15)

    canvas.line(frame.map(0.0, 0.0), frame.map(1.0, 1.0), stroke="#888888", width=1.0, dash="4 4")

    # forecast histograms along the bottom, scaled to a fifth of the panel height
    for d in diagrams:
        style = spec.style(d.name)
        peak = max(int(d.histogram_counts.max()), 1)
        edges = d.histogram_edges
        for count, lo, hi in zip(d.histogram_counts.tolist(), edges[:-1].tolist(), edges[1:].tolist()):
            if count == 0:
                continue
            x0, y0 = frame.map(lo, 0.2 * count / peak)
            x1, y1 = frame.map(hi, 0.0)
            canvas.rect(x0, y0, x1 - x0, y1 - y0, stroke=None, fill=style.color, opacity=0.2)

    for d in diagrams:
        style = spec.style(d.name)
        canvas.polyline(frame.map_all(d.curve_points), stroke=style.color, dash=style.dash)
    canvas.end_group()
    _legend(canvas, spec, frame, [d.name for d in diagrams])


def draw_roc(canvas: SvgCanvas, spec: FigureSpec, box: Tuple[float, float, float, float],
             curves: Sequence[RocCurve]) -> None:
    frame = PanelFrame(*box)
    draw_axes(canvas, frame, "ROC curve", "false alarm rate", "hit rate")
    canvas.line(frame.map(0.0, 0.0), frame.map(1.0, 1.0), stroke="#888888", width=1.0, dash="4 4")
    for curve in curves:
        style = spec.style(curve.name)
        canvas.polyline(frame.map_all(curve.vertices), stroke=style.color, dash=style.dash)
    _legend(canvas, spec, frame, [c.name for c in curves], [f"{c.name} (AUC {c.auc:.3f})" for c in curves])


def render_murphy(spec: FigureSpec, curves: Sequence[MurphyCurve]) -> str:
    canvas = SvgCanvas(spec.width, spec.height)
    draw_murphy(canvas, spec, _frames(spec, 1)[0], curves)
    return canvas.render()


def render_reliability(spec: FigureSpec, diagrams: Sequence[ReliabilityDiagram]) -> str:
    canvas = SvgCanvas(spec.width, spec.height)
    draw_reliability(canvas, spec, _frames(spec, 1)[0], diagrams)
    return canvas.render()


def render_roc(spec: FigureSpec, curves: Sequence[RocCurve]) -> str:
    canvas = SvgCanvas(spec.width, spec.height)
    draw_roc(canvas, spec, _frames(spec, 1)[0], curves)
    return canvas.render()


def render_triptych(
    spec: FigureSpec,
    curves: Sequence[MurphyCurve],
    diagrams: Sequence[ReliabilityDiagram],
    rocs: Sequence[RocCurve],
) -> str:
    """Murphy curve, reliability diagram and ROC curve as three aligned panels"""
    if spec.kind != "triptych":
        raise FigureError(f"triptych rendering needs a triptych spec, got '{spec.kind}'")
    canvas = SvgCanvas(spec.width, spec.height)
    boxes = _frames(spec, len(spec.panels))
    draw_murphy(canvas, spec, boxes[0], curves)
    draw_reliability(canvas, spec, boxes[1], diagrams)
    draw_roc(canvas, spec, boxes[2], rocs)
    return canvas.render()


def render_mcbdsc(spec: FigureSpec, plot: McbDscPlot) -> str:
    """
        MCB on the horizontal axis, DSC on the vertical axis, iso-score lines of
        slope 1 and the diagonal DSC = MCB carrying the UNC label. The origin is
        marked as the best constant forecast; points with infinite MCB sit on
        the right margin.
    """
    canvas = SvgCanvas(spec.width, spec.height)
    finite = [p for p in plot.points if not p.margin]
    x_max = max([p.mcb for p in finite] + [1e-6]) * 1.15
    y_max = max([p.dsc for p in plot.points] + [plot.unc * 0.5, 1e-6]) * 1.15
    box = _frames(spec, 1)[0]
    frame = PanelFrame(box[0], box[1], box[2] - 60, box[3],
                       x_range=spec.x_range or (0.0, x_max), y_range=spec.y_range or (0.0, y_max))
    draw_axes(canvas, frame, f"MCB-DSC plot ({plot.rule.name})", "MCB", "DSC")

    clip = canvas.clip_rect(frame.left, frame.top, frame.width, frame.height)
    canvas.begin_group(clip)
    x0, x1 = frame.x_range
    for level, label in zip(plot.contour_levels, plot.contour_labels):
        intercept = plot.unc - level
        canvas.line(frame.map(x0, x0 + intercept), frame.map(x1, x1 + intercept), stroke="#bbbbbb", width=1.0)
    canvas.line(frame.map(x0, x0), frame.map(x1, x1), stroke="#555555", width=1.2)
    canvas.end_group()

    for level, label in zip(plot.contour_levels, plot.contour_labels):
        y = x1 + plot.unc - level
        if frame.y_range[0] <= y <= frame.y_range[1]:
            px, py = frame.map(x1, y)
            canvas.text((px + 4, py + 4), label, size=9, fill="#888888")
    if x1 <= frame.y_range[1]:
        px, py = frame.map(x1, x1)
        canvas.text((px + 4, py + 4), f"UNC {plot.unc:.3f}", size=10, fill="#555555")
    if frame.x_range[0] <= 0.0 and frame.y_range[0] <= 0.0:
        ox, oy = frame.map(0.0, 0.0)
        canvas.circle((ox, oy), 3.0, fill="#ffffff", stroke="#555555")
        canvas.text((ox + 6, oy - 6), "best constant forecast", size=9, fill="#555555")

    for p in plot.points:
        style = spec.style(p.name)
        if p.margin:
            px = frame.left + frame.width + 30
            _, py = frame.map(x0, min(p.dsc, frame.y_range[1]))
        else:
            px, py = frame.map(p.mcb, p.dsc)
        canvas.circle((px, py), 3.5, fill=style.color)
        canvas.text((px + 5, py - 5), p.name, size=10)
    if any(p.margin for p in plot.points):
        canvas.text((frame.left + frame.width + 30, frame.top - 4), "MCB = ∞", size=10, anchor="middle")

    logger.debug(f"MCB-DSC plot with {len(plot.points)} points and {len(plot.contour_levels)} contours")
    return canvas.render()
