from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape, quoteattr

Point = Tuple[float, float]


def fmt(value: float) -> str:
    """Fixed two-decimal coordinates so output is byte-stable"""
    text = f"{value:.2f}"
    return "0.00" if text == "-0.00" else text


@dataclass
class SvgCanvas:
    """Minimal SVG writer: elements are appended in drawing order and rendered once"""
    width: int
    height: int
    elements: List[str] = field(default_factory=list)
    _clip_ids: int = 0

    def _style(self, stroke: Optional[str], width: float, fill: Optional[str], dash: Optional[str], opacity: Optional[float]) -> str:
        parts = [f'stroke="{stroke}"' if stroke else 'stroke="none"', f'fill="{fill or "none"}"']
        if stroke:
            parts.append(f'stroke-width="{fmt(width)}"')
        if dash:
            parts.append(f'stroke-dasharray="{dash}"')
        if opacity is not None:
            parts.append(f'opacity="{fmt(opacity)}"')
        return " ".join(parts)

    def clip_rect(self, x: float, y: float, w: float, h: float) -> str:
        self._clip_ids += 1
        clip_id = f"clip{self._clip_ids}"
        self.elements.append(
            f'<clipPath id="{clip_id}"><rect x="{fmt(x)}" y="{fmt(y)}" width="{fmt(w)}" height="{fmt(h)}"/></clipPath>'
        )
        return clip_id

    def begin_group(self, clip_id: Optional[str] = None) -> None:
        self.elements.append(f'<g clip-path="url(#{clip_id})">' if clip_id else "<g>")

    def end_group(self) -> None:
        self.elements.append("</g>")

    def rect(self, x: float, y: float, w: float, h: float, stroke: Optional[str] = "#000000",
             width: float = 1.0, fill: Optional[str] = None, opacity: Optional[float] = None) -> None:
        self.elements.append(
            f'<rect x="{fmt(x)}" y="{fmt(y)}" width="{fmt(w)}" height="{fmt(h)}" '
            f'{self._style(stroke, width, fill, None, opacity)}/>'
        )

    def line(self, p: Point, q: Point, stroke: str = "#000000", width: float = 1.0, dash: Optional[str] = None) -> None:
        self.elements.append(
            f'<line x1="{fmt(p[0])}" y1="{fmt(p[1])}" x2="{fmt(q[0])}" y2="{fmt(q[1])}" '
            f'{self._style(stroke, width, None, dash, None)}/>'
        )

    def polyline(self, points: Sequence[Point], stroke: str = "#000000", width: float = 1.5,
                 dash: Optional[str] = None) -> None:
        if len(points) < 2:
            return
        coords = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in points)
        self.elements.append(f'<polyline points="{coords}" {self._style(stroke, width, None, dash, None)}/>')

    def polygon(self, points: Sequence[Point], fill: str, opacity: float = 0.3) -> None:
        if len(points) < 3:
            return
        coords = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in points)
        self.elements.append(f'<polygon points="{coords}" {self._style(None, 0.0, fill, None, opacity)}/>')

    def circle(self, center: Point, r: float, fill: str, stroke: Optional[str] = None) -> None:
        self.elements.append(
            f'<circle cx="{fmt(center[0])}" cy="{fmt(center[1])}" r="{fmt(r)}" '
            f'{self._style(stroke, 1.0, fill, None, None)}/>'
        )

    def text(self, position: Point, content: str, size: int = 12, anchor: str = "start",
             rotate: Optional[float] = None, fill: str = "#000000") -> None:
        transform = f' transform="rotate({fmt(rotate)} {fmt(position[0])} {fmt(position[1])})"' if rotate else ""
        self.elements.append(
            f'<text x="{fmt(position[0])}" y="{fmt(position[1])}" font-family="sans-serif" '
            f'font-size="{size}" text-anchor={quoteattr(anchor)} fill="{fill}"{transform}>{escape(content)}</text>'
        )

    def render(self) -> str:
        header = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}">'
        )
        return "\n".join([header, f'<rect x="0" y="0" width="{self.width}" height="{self.height}" fill="#ffffff"/>',
                          *self.elements, "</svg>"]) + "\n"


@dataclass(frozen=True)
class PanelFrame:
    """Plot area of one panel and its data ranges"""
    left: float
    top: float
    width: float
    height: float
    x_range: Tuple[float, float] = (0.0, 1.0)
    y_range: Tuple[float, float] = (0.0, 1.0)

    def map(self, x: float, y: float) -> Point:
        x0, x1 = self.x_range
        y0, y1 = self.y_range
        px = self.left + (x - x0) / (x1 - x0) * self.width
        py = self.top + self.height - (y - y0) / (y1 - y0) * self.height
        return px, py

    def map_all(self, points: Sequence[Point]) -> List[Point]:
        return [self.map(x, y) for x, y in points]


def nice_ticks(lo: float, hi: float, count: int = 5) -> List[float]:
    """Evenly spaced tick values including both ends"""
    if hi <= lo:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def draw_axes(canvas: SvgCanvas, frame: PanelFrame, title: str, xlabel: str, ylabel: str) -> None:
    canvas.rect(frame.left, frame.top, frame.width, frame.height, stroke="#333333", width=1.0)
    bottom = frame.top + frame.height
    for t in nice_ticks(*frame.x_range):
        px, _ = frame.map(t, frame.y_range[0])
        canvas.line((px, bottom), (px, bottom + 5), stroke="#333333")
        canvas.text((px, bottom + 18), f"{t:.2f}", size=10, anchor="middle")
    for t in nice_ticks(*frame.y_range):
        _, py = frame.map(frame.x_range[0], t)
        canvas.line((frame.left - 5, py), (frame.left, py), stroke="#333333")
        canvas.text((frame.left - 8, py + 4), f"{t:.2f}", size=10, anchor="end")
    canvas.text((frame.left + frame.width / 2, frame.top - 10), title, size=14, anchor="middle")
    canvas.text((frame.left + frame.width / 2, bottom + 36), xlabel, size=12, anchor="middle")
    canvas.text((frame.left - 42, frame.top + frame.height / 2), ylabel, size=12, anchor="middle", rotate=-90)
