from typing import List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..exceptions import FigureError

FigureKind = Literal["murphy", "reliability", "roc", "triptych", "mcbdsc"]

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
)
DASHES = (None, "6 3", "2 2", "8 3 2 3")

TRIPTYCH_PANELS: Tuple[str, ...] = ("murphy", "reliability", "roc")


class SeriesStyle(BaseModel):
    name: str
    color: str
    dash: Optional[str] = None

    model_config = ConfigDict(frozen=True)


class FigureSpec(BaseModel):
    """What to draw and how each series looks"""
    kind: FigureKind
    series: List[SeriesStyle] = Field(default_factory=list)
    width: int = 1200
    height: int = 400
    x_range: Optional[Tuple[float, float]] = None
    y_range: Optional[Tuple[float, float]] = None
    support_range: bool = False

    @model_validator(mode="after")
    def _check(self) -> "FigureSpec":
        if self.width < 100 or self.height < 100:
            raise ValueError(f"figure canvas too small: {self.width}x{self.height}")
        for r in (self.x_range, self.y_range):
            if r is not None and not r[0] < r[1]:
                raise ValueError(f"axis range must be increasing, got {r}")
        names = [s.name for s in self.series]
        if len(set(names)) != len(names):
            raise ValueError("series names must be unique")
        return self

    @property
    def panels(self) -> Tuple[str, ...]:
        return TRIPTYCH_PANELS if self.kind == "triptych" else (self.kind,)

    def style(self, name: str) -> SeriesStyle:
        for s in self.series:
            if s.name == name:
                return s
        return SeriesStyle(name=name, color="#000000")

    @classmethod
    def for_series(cls, kind: str, names: Sequence[str], **kwargs) -> "FigureSpec":
        """Spec with palette colors assigned to the series in order"""
        series = [
            SeriesStyle(name=name, color=PALETTE[i % len(PALETTE)], dash=DASHES[(i // len(PALETTE)) % len(DASHES)])
            for i, name in enumerate(names)
        ]
        try:
            return cls(kind=kind, series=series, **kwargs)
        except ValidationError as e:
            raise FigureError(f"invalid figure specification: {e.errors()[0]['msg']}") from e
