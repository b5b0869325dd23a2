"""Static SVG diagrams of fixed points on the circle."""

from html import escape
import logging
import math
from typing import Sequence

from circlerig.homeo.classify import classify
from circlerig.representation.representation import Representation, evaluate_word
from circlerig.shared_libraries.types import DynClass
from circlerig.surface.words import Word

_logger = logging.getLogger(__name__)

PREAMBLE = """\
<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<svg
    width="%(width).3fmm"
    height="%(height).3fmm"
    viewBox="0 0 %(width).3f %(height).3f"
    version="1.1"
    xmlns="http://www.w3.org/2000/svg">
<g transform="translate(%(trans_x).3f,%(trans_y).3f)">
<rect x="%(neg_trans_x).3f" y="%(neg_trans_y).3f" width="%(width).3f" height="%(height).3f" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</g></svg>
"""

RADIUS = 40.0
TICK = 2.0
PALETTE = ("#1b6ca8", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#2c3e50")


class CircleDiagram:
    """Accumulates SVG commands and their bounding box."""

    def __init__(self):
        self.min_x = None
        self.max_x = None
        self.min_y = None
        self.max_y = None
        self.commands: list[str] = []

    def require(self, x: float, y: float) -> None:
        if self.min_x is None:
            self.min_x = self.max_x = x
            self.min_y = self.max_y = y
        else:
            self.min_x = min(self.min_x, x)
            self.max_x = max(self.max_x, x)
            self.min_y = min(self.min_y, y)
            self.max_y = max(self.max_y, y)

    def circle(self, x: float, y: float, radius: float, stroke: str = "#000000", fill: str = "none") -> None:
        self.require(x - radius, y - radius)
        self.require(x + radius, y + radius)
        self.commands.append(
            f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{radius:.3f}" '
            f'style="fill:{fill};stroke:{stroke};stroke-width:0.3"/>'
        )

    def line(self, points: Sequence[tuple[float, float]], color: str = "#000000", width: float = 0.3) -> None:
        for x, y in points:
            self.require(x, y)
        coords = " ".join(f"{x:.3f},{y:.3f}" for x, y in points)
        self.commands.append(f'<polyline points="{coords}" style="fill:none;stroke:{color};stroke-width:{width}"/>')

    def text(self, x: float, y: float, text: str, color: str = "#444444", size: float = 3.5) -> None:
        self.require(x - len(text) * size * 0.3, y - size)
        self.require(x + len(text) * size * 0.3, y + size * 0.5)
        self.commands.append(
            f'<text x="{x:.3f}" y="{y:.3f}" fill="{color}" font-size="{size}" '
            f'font-family="monospace" text-anchor="middle">{escape(text)}</text>'
        )

    def render(self) -> str:
        pad = max(self.max_x - self.min_x, self.max_y - self.min_y) * 0.1
        width = self.max_x - self.min_x + 2 * pad
        height = self.max_y - self.min_y + 2 * pad
        trans_x = -self.min_x + pad
        trans_y = -self.min_y + pad
        neg_trans_x = -trans_x
        neg_trans_y = -trans_y
        return PREAMBLE % locals() + "".join(c + "\n" for c in self.commands) + POSTAMBLE

    def save(self, filename: str) -> None:
        with open(filename, "w", encoding="utf-8") as f:
            f.write(self.render())


def _position(angle: float, radius: float) -> tuple[float, float]:
    """Counterclockwise from the positive x axis; SVG y points down."""
    theta = 2 * math.pi * angle
    return radius * math.cos(theta), -radius * math.sin(theta)


def _labels(w: Word, cls: DynClass) -> list[tuple[float, str]]:
    if cls.tag == "Hyperbolic":
        return [(cls.repelling.value, f"{w}-"), (cls.attracting.value, f"{w}+")]
    return [(p.value, str(w)) for p in cls.fixed_points()]


def fixed_point_diagram(rep: Representation, ws: Sequence[Word]) -> CircleDiagram:
    """The circle with ticks at quarter turns and the labeled fixed points of each rho(w).

    Hyperbolic elements get a repelling (-) and an attracting (+) label; maps
    without fixed points are listed in the legend only.
    """
    diagram = CircleDiagram()
    diagram.circle(0.0, 0.0, RADIUS)
    for k in range(4):
        inner, outer = _position(k / 4, RADIUS - TICK), _position(k / 4, RADIUS + TICK)
        diagram.line([inner, outer])
    for i, w in enumerate(ws):
        color = PALETTE[i % len(PALETTE)]
        cls = classify(evaluate_word(rep, w))
        points = _labels(w, cls)
        _logger.debug("diagram: %s is %s with %d marked points", w, cls.tag, len(points))
        for angle, label in points:
            x, y = _position(angle, RADIUS)
            diagram.circle(x, y, 1.0, stroke=color, fill=color)
            lx, ly = _position(angle, RADIUS + 7.0)
            diagram.text(lx, ly + 1.2, label, color=color)
        diagram.text(0.0, -RADIUS * 0.2 + 5.0 * i, f"{w}: {cls.tag}", color=color, size=3.0)
    return diagram
