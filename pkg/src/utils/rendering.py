"""
CSV and SVG output for HN polygons
"""

from pathlib import Path
from typing import List, Tuple

from ..core.exact import render_decimal
from ..core.polygon import HNPolygon

SVG_WIDTH = 480
SVG_HEIGHT = 320
SVG_MARGIN = 48
TICK_LENGTH = 6


class PolygonRenderer:
    """Render polygons as text; the output only depends on the polygon and digits"""

    def __init__(self, digits: int = 12):
        self.digits = digits

    def to_csv(self, polygon: HNPolygon) -> str:
        """Header t,P then one row per vertex: exact t, decimal P"""
        rows = ["t,P"]
        for t, height in polygon.vertices:
            rows.append(f"{t},{render_decimal(height, self.digits)}")
        return "\n".join(rows) + "\n"

    def to_svg(self, polygon: HNPolygon) -> str:
        """A single polyline over fixed axes with ticks at the vertex abscissae"""
        points = self._layout(polygon)
        axis_y = self._y(0.0, *self._height_range(polygon))
        lines = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
            f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
            f'  <line x1="{SVG_MARGIN}" y1="{axis_y:.3f}" x2="{SVG_WIDTH - SVG_MARGIN}" y2="{axis_y:.3f}" '
            'stroke="black" stroke-width="1"/>',
            f'  <line x1="{SVG_MARGIN}" y1="{SVG_MARGIN}" x2="{SVG_MARGIN}" y2="{SVG_HEIGHT - SVG_MARGIN}" '
            'stroke="black" stroke-width="1"/>',
        ]
        for (t, _), (x, _) in zip(polygon.vertices, points):
            lines.append(
                f'  <line x1="{x:.3f}" y1="{axis_y - TICK_LENGTH:.3f}" x2="{x:.3f}" y2="{axis_y + TICK_LENGTH:.3f}" '
                'stroke="black" stroke-width="1"/>'
            )
            lines.append(
                f'  <text x="{x:.3f}" y="{axis_y + 3 * TICK_LENGTH:.3f}" font-family="monospace" '
                f'font-size="10" text-anchor="middle">{t}</text>'
            )
        coordinates = " ".join(f"{x:.3f},{y:.3f}" for x, y in points)
        lines.append(f'  <polyline points="{coordinates}" fill="none" stroke="black" stroke-width="2"/>')
        lines.append("</svg>")
        return "\n".join(lines) + "\n"

    def save(self, text: str, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        return path

    def _layout(self, polygon: HNPolygon) -> List[Tuple[float, float]]:
        low, high = self._height_range(polygon)
        width = float(polygon.width) or 1.0
        usable = SVG_WIDTH - 2 * SVG_MARGIN
        return [
            (SVG_MARGIN + usable * float(t) / width, self._y(float(height), low, high))
            for t, height in polygon.vertices
        ]

    @staticmethod
    def _height_range(polygon: HNPolygon) -> Tuple[float, float]:
        heights = [float(h) for _, h in polygon.vertices] + [0.0]
        low, high = min(heights), max(heights)
        if high == low:
            high = low + 1.0
        return low, high

    @staticmethod
    def _y(value: float, low: float, high: float) -> float:
        usable = SVG_HEIGHT - 2 * SVG_MARGIN
        return SVG_HEIGHT - SVG_MARGIN - usable * (value - low) / (high - low)
