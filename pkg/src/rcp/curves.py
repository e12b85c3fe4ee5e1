"""Boundary curves: line segments and circular arcs.

Endpoints are stored as the exact tuples the caller passes in, so fragments
built from one shared vertex meet at bit-identical coordinates.  Point
location relies on that.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .geometry import GeometryError, Point

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class Segment:
    p: Point
    q: Point

    def __post_init__(self):
        if self.p == self.q:
            raise GeometryError("zero-length segment")

    kind = "segment"

    def midpoint(self) -> Point:
        return ((self.p[0] + self.q[0]) / 2, (self.p[1] + self.q[1]) / 2)


@dataclass(frozen=True)
class Arc:
    """Counterclockwise arc of the circle (center, radius) from ``p`` to ``q``.

    ``p == q`` denotes the full circle.  ``start``/``sweep`` are the polar
    angle of ``p`` and the counterclockwise extent in (0, 2pi].
    """

    center: Point
    radius: float
    p: Point
    q: Point

    kind = "arc"

    @property
    def start(self) -> float:
        return math.atan2(self.p[1] - self.center[1], self.p[0] - self.center[0])

    @property
    def sweep(self) -> float:
        if self.p == self.q:
            return TWO_PI
        a1 = math.atan2(self.q[1] - self.center[1], self.q[0] - self.center[0])
        s = (a1 - self.start) % TWO_PI
        return s if s > 0 else TWO_PI

    def point_at(self, angle: float) -> Point:
        return (self.center[0] + self.radius * math.cos(angle),
                self.center[1] + self.radius * math.sin(angle))

    def midpoint(self) -> Point:
        return self.point_at(self.start + self.sweep / 2)


Curve = Union[Segment, Arc]


@dataclass(frozen=True)
class CurveFragment:
    """An x- and y-monotone piece of a segment or arc."""

    curve: Curve

    @property
    def kind(self) -> str:
        return self.curve.kind

    @property
    def endpoints(self) -> tuple[Point, Point]:
        return (self.curve.p, self.curve.q)


def split_arc_at(arc: Arc, cut_angles) -> list[Arc]:
    """Split an arc at every angle of ``cut_angles`` falling strictly inside it."""
    a0, sw = arc.start, arc.sweep
    offsets = sorted({(c - a0) % TWO_PI for c in cut_angles})
    offsets = [o for o in offsets if 1e-12 < o < sw - 1e-12]
    if arc.p == arc.q and not offsets:
        raise GeometryError("full circle needs at least one cut")
    pts = [arc.p] + [_snap(arc.point_at(a0 + o), arc.center) for o in offsets] + [arc.q]
    return [Arc(arc.center, arc.radius, pts[i], pts[i + 1]) for i in range(len(pts) - 1)]


def _snap(p: Point, center: Point) -> Point:
    # keep extreme points exactly axis-aligned with the center
    x, y = p
    if abs(x - center[0]) < 1e-15 * max(1.0, abs(center[0])):
        x = center[0]
    if abs(y - center[1]) < 1e-15 * max(1.0, abs(center[1])):
        y = center[1]
    return (x, y)


def split_monotone(edge: Curve) -> list[CurveFragment]:
    """Cut a segment or arc into pieces monotone in both x and y."""
    if isinstance(edge, Segment):
        return [CurveFragment(edge)]
    if edge.radius <= 0:
        raise GeometryError("arc with non-positive radius")
    arcs = split_arc_at(edge, [0.0, math.pi / 2, math.pi, 3 * math.pi / 2])
    return [CurveFragment(a) for a in arcs]


def circle_intersections(c1: Point, r1: float, c2: Point, r2: float):
    """The 0, 1 or 2 intersection points of two circles, ordered so the first
    is on the left of the directed line c1 -> c2."""
    dx, dy = c2[0] - c1[0], c2[1] - c1[1]
    d = math.hypot(dx, dy)
    if d == 0 or d > r1 + r2 or d < abs(r1 - r2):
        return []
    a = (r1 * r1 - r2 * r2 + d * d) / (2 * d)
    h2 = r1 * r1 - a * a
    h = math.sqrt(h2) if h2 > 0 else 0.0
    mx, my = c1[0] + a * dx / d, c1[1] + a * dy / d
    if h == 0:
        return [(mx, my)]
    ox, oy = -dy / d * h, dx / d * h
    return [(mx + ox, my + oy), (mx - ox, my - oy)]


def arc_angle(center: Point, p: Point) -> float:
    return math.atan2(p[1] - center[1], p[0] - center[0]) % TWO_PI
