from .spec import FigureSpec, SeriesStyle, PALETTE, TRIPTYCH_PANELS
from .svg import SvgCanvas, PanelFrame
from .render import render_murphy, render_reliability, render_roc, render_triptych, render_mcbdsc

__all__ = [
    "FigureSpec",
    "SeriesStyle",
    "PALETTE",
    "TRIPTYCH_PANELS",
    "SvgCanvas",
    "PanelFrame",
    "render_murphy",
    "render_reliability",
    "render_roc",
    "render_triptych",
    "render_mcbdsc",
]
