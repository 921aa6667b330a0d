"""
Minimal SVG drawing surface
Drawing calls take plot coordinates (y up) inside a fixed square frame and queue SVG elements;
save() writes them out with fixed-precision numbers so identical drawings give identical files.
"""
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

PREAMBLE = """\
<?xml version="1.0" encoding="UTF-8" standalone="no"?>
%(comment)s<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%(size)d" height="%(size)d" viewBox="0 0 %(size)d %(size)d">
<rect x="0" y="0" width="%(size)d" height="%(size)d" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""

Point = Tuple[float, float]


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


class SvgCanvas:
    """Square canvas mapping plot coordinates in [-extent, extent] onto pixels"""

    def __init__(self, size: int = 400, extent: float = 1.25, precision: int = 3):
        self.size = size
        self.extent = extent
        self.precision = precision
        self.scale = (size / 2.0) / extent
        self.commands: List[str] = []
        self.comment: Optional[str] = None

    def to_pixels(self, x: float, y: float) -> Point:
        centre = self.size / 2.0
        return centre + self.scale * x, centre - self.scale * y

    def _fmt(self, value: float) -> str:
        text = f"{value:.{self.precision}f}"
        # avoid "-0.000"
        if text.lstrip("-").strip("0.") == "":
            text = text.lstrip("-")
        return text

    def _points(self, points: Iterable[Point]) -> str:
        out = []
        for x, y in points:
            px, py = self.to_pixels(x, y)
            out.append(f"{self._fmt(px)},{self._fmt(py)}")
        return " ".join(out)

    def set_comment(self, text: str):
        # "--" is not allowed inside an XML comment
        self.comment = text.replace("--", "- -")

    def circle(self, x: float, y: float, radius: float, stroke: str = "#000000",
               fill: str = "none", css_class: str = "", width: float = 1.0):
        px, py = self.to_pixels(x, y)
        self.commands.append(
            f'<circle class="{css_class}" cx="{self._fmt(px)}" cy="{self._fmt(py)}" '
            f'r="{self._fmt(radius * self.scale)}" '
            f'style="fill:{fill};stroke:{stroke};stroke-width:{width}"/>'
        )

    def marker(self, x: float, y: float, radius_px: float, stroke: str = "#000000",
               fill: str = "none", css_class: str = ""):
        """Circle whose radius is given in pixels rather than plot units"""
        self.circle(x, y, radius_px / self.scale, stroke=stroke, fill=fill, css_class=css_class, width=1.5)

    def line(self, start: Point, end: Point, color: str = "#999999", css_class: str = "", dash: bool = False):
        (x1, y1), (x2, y2) = self.to_pixels(*start), self.to_pixels(*end)
        dash_style = ";stroke-dasharray:4,3" if dash else ""
        self.commands.append(
            f'<line class="{css_class}" x1="{self._fmt(x1)}" y1="{self._fmt(y1)}" '
            f'x2="{self._fmt(x2)}" y2="{self._fmt(y2)}" style="stroke:{color};stroke-width:1{dash_style}"/>'
        )

    def polyline(self, points: Sequence[Point], color: str = "#000000", width: float = 1.5,
                 css_class: str = "", extra: str = ""):
        attrs = f' {extra}' if extra else ""
        self.commands.append(
            f'<polyline class="{css_class}"{attrs} points="{self._points(points)}" '
            f'style="fill:none;stroke:{color};stroke-width:{width}"/>'
        )

    def text(self, x: float, y: float, text: str, color: str = "#444444", size: int = 14, css_class: str = "label"):
        px, py = self.to_pixels(x, y)
        self.commands.append(
            f'<text class="{css_class}" x="{self._fmt(px)}" y="{self._fmt(py)}" fill="{color}" '
            f'font-size="{size}" font-family="monospace" text-anchor="middle">{_escape(text)}</text>'
        )

    def render(self) -> str:
        comment = f"<!-- {self.comment} -->\n" if self.comment else ""
        body = "".join(item + "\n" for item in self.commands)
        return PREAMBLE % {"comment": comment, "size": self.size} + body + POSTAMBLE

    def save(self, filename) -> Path:
        path = Path(filename)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(), encoding="utf-8")
        return path
