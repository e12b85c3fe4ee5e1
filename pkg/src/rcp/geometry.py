"""Planar primitives, base shapes and the smallest-translate machinery.

Points are plain ``(x, y)`` tuples of floats.  Shapes are frozen dataclasses
and every translate ``X_q`` of a base shape ``X`` is ``X + q``; containment
tests take the translate parameter ``q`` explicitly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

EPS = 1e-9

Point = tuple[float, float]


class GeometryError(ValueError):
    """Raised for degenerate or otherwise unsupported input."""


# ---------------------------------------------------------------------------
# predicates

def orient(a: Point, b: Point, c: Point) -> float:
    """Twice the signed area of triangle abc (positive when counterclockwise).

    The float determinant is trusted unless it falls inside its forward error
    bound, in which case the sign is recomputed with rationals.
    """
    detleft = (a[0] - c[0]) * (b[1] - c[1])
    detright = (a[1] - c[1]) * (b[0] - c[0])
    det = detleft - detright
    errbound = 3.3306690738754716e-16 * (abs(detleft) + abs(detright))
    if det > errbound or -det > errbound:
        return det
    fa = [Fraction(v) for v in a]
    fb = [Fraction(v) for v in b]
    fc = [Fraction(v) for v in c]
    exact = (fa[0] - fc[0]) * (fb[1] - fc[1]) - (fa[1] - fc[1]) * (fb[0] - fc[0])
    return float(exact) if exact else 0.0


def dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def cross(u: Point, v: Point) -> float:
    return u[0] * v[1] - u[1] * v[0]


def unit(v: Point) -> Point:
    n = math.hypot(v[0], v[1])
    if n == 0:
        raise GeometryError("zero-length direction")
    return (v[0] / n, v[1] / n)


def ccw_angle(u: Point, v: Point) -> float:
    """Counterclockwise angle in [0, 2pi) swept from direction u to v."""
    a = math.atan2(cross(u, v), u[0] * v[0] + u[1] * v[1])
    return a if a >= 0 else a + 2 * math.pi


def vector_angle(u: Point, v: Point) -> float:
    """Unsigned angle in [0, pi] between two vectors."""
    return abs(math.atan2(cross(u, v), u[0] * v[0] + u[1] * v[1]))


@dataclass(frozen=True)
class PointPair:
    """An unordered pair of distinct points, stored lexicographically."""

    a: Point
    b: Point
    length: float = field(compare=False)

    @classmethod
    def of(cls, a: Sequence[float], b: Sequence[float]) -> "PointPair":
        a = (float(a[0]), float(a[1]))
        b = (float(b[0]), float(b[1]))
        if a == b:
            raise GeometryError(f"pair of identical points {a}")
        if b < a:
            a, b = b, a
        return cls(a, b, dist(a, b))


def segments_cross(s1: tuple[Point, Point], s2: tuple[Point, Point]) -> bool:
    """True iff the two segments meet in exactly one point interior to both.

    Touching at an endpoint does not count.  Collinear overlap violates the
    general-position assumption and raises.
    """
    (a, b), (c, d) = s1, s2
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 == 0 and o2 == 0:
        lo1, hi1 = sorted([a, b])
        lo2, hi2 = sorted([c, d])
        if max(lo1, lo2) < min(hi1, hi2):
            raise GeometryError("collinear overlapping segments")
        return False
    if o1 == 0 or o2 == 0 or o3 == 0 or o4 == 0:
        return False
    return (o1 > 0) != (o2 > 0) and (o3 > 0) != (o4 > 0)


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    L2 = dx * dx + dy * dy
    if L2 == 0:
        return dist(p, a)
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2
    t = min(1.0, max(0.0, t))
    return math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy)


def segment_distance(a: Point, b: Point, c: Point, d: Point) -> float:
    if segments_cross((a, b), (c, d)):
        return 0.0
    return min(point_segment_distance(a, c, d), point_segment_distance(b, c, d),
               point_segment_distance(c, a, b), point_segment_distance(d, a, b))


def segment_meets_box(a: Point, b: Point, lo: Point, hi: Point) -> bool:
    """Closed segment vs closed axis-parallel box (Liang-Barsky clipping)."""
    t0, t1 = 0.0, 1.0
    dx, dy = b[0] - a[0], b[1] - a[1]
    for p, q in ((-dx, a[0] - lo[0]), (dx, hi[0] - a[0]),
                 (-dy, a[1] - lo[1]), (dy, hi[1] - a[1])):
        if p == 0:
            if q < 0:
                return False
        else:
            t = q / p
            if p < 0:
                if t > t1:
                    return False
                t0 = max(t0, t)
            else:
                if t < t0:
                    return False
                t1 = min(t1, t)
    return t0 <= t1


# ---------------------------------------------------------------------------
# affine maps and shapes

@dataclass(frozen=True)
class AffineMap:
    """x -> linear @ x + offset."""

    linear: tuple[tuple[float, float], tuple[float, float]]
    offset: Point

    def __post_init__(self):
        (p, q), (r, s) = self.linear
        if abs(p * s - q * r) < 1e-15:
            raise GeometryError("singular affine map")

    def __call__(self, x: Point) -> Point:
        (p, q), (r, s) = self.linear
        return (p * x[0] + q * x[1] + self.offset[0], r * x[0] + s * x[1] + self.offset[1])

    def apply_linear(self, v: Point) -> Point:
        (p, q), (r, s) = self.linear
        return (p * v[0] + q * v[1], r * v[0] + s * v[1])

    def apply_array(self, pts: np.ndarray) -> np.ndarray:
        return np.asarray(pts, dtype=float) @ np.asarray(self.linear).T + np.asarray(self.offset)

    def inverse(self) -> "AffineMap":
        (p, q), (r, s) = self.linear
        det = p * s - q * r
        inv = ((s / det, -q / det), (-r / det, p / det))
        o = self.offset
        return AffineMap(inv, (-(inv[0][0] * o[0] + inv[0][1] * o[1]),
                               -(inv[1][0] * o[0] + inv[1][1] * o[1])))


def _cone_map(apex: Point, d1: Point, d2: Point) -> AffineMap:
    # Columns d1, d2 span the cone; the inverse sends d1 -> e1, d2 -> e2.
    det = d1[0] * d2[1] - d2[0] * d1[1]
    inv = ((d2[1] / det, -d2[0] / det), (-d1[1] / det, d1[0] / det))
    off = (-(inv[0][0] * apex[0] + inv[0][1] * apex[1]),
           -(inv[1][0] * apex[0] + inv[1][1] * apex[1]))
    return AffineMap(inv, off)


@dataclass(frozen=True)
class Wedge:
    """Intersection of two halfplanes: the region swept counterclockwise from
    ``dir1`` to ``dir2`` around ``apex`` (angle strictly between 0 and pi)."""

    apex: Point
    dir1: Point
    dir2: Point

    def __post_init__(self):
        object.__setattr__(self, "dir1", unit(self.dir1))
        object.__setattr__(self, "dir2", unit(self.dir2))
        if not 0 < self.angle < math.pi:
            raise GeometryError(f"wedge angle {self.angle} not in (0, pi)")

    @classmethod
    def from_angle(cls, theta: float, rotation: float = 0.0, apex: Point = (0.0, 0.0)) -> "Wedge":
        return cls(apex, (math.cos(rotation), math.sin(rotation)),
                   (math.cos(rotation + theta), math.sin(rotation + theta)))

    @property
    def angle(self) -> float:
        return ccw_angle(self.dir1, self.dir2)

    def contains(self, x: Point, q: Point = (0.0, 0.0), eps: float = EPS) -> bool:
        v = (x[0] - self.apex[0] - q[0], x[1] - self.apex[1] - q[1])
        return cross(self.dir1, v) >= -eps and cross(v, self.dir2) >= -eps

    def contains_array(self, pts: np.ndarray, q: Point = (0.0, 0.0), eps: float = EPS) -> np.ndarray:
        v = np.asarray(pts, dtype=float) - (self.apex[0] + q[0], self.apex[1] + q[1])
        c1 = self.dir1[0] * v[:, 1] - self.dir1[1] * v[:, 0]
        c2 = v[:, 0] * self.dir2[1] - v[:, 1] * self.dir2[0]
        return (c1 >= -eps) & (c2 >= -eps)


@dataclass(frozen=True)
class CoWedge:
    """Union of two halfplanes: the region swept counterclockwise from ``dir1``
    to ``dir2`` around ``apex`` (angle strictly between pi and 2pi)."""

    apex: Point
    dir1: Point
    dir2: Point

    def __post_init__(self):
        object.__setattr__(self, "dir1", unit(self.dir1))
        object.__setattr__(self, "dir2", unit(self.dir2))
        if not math.pi < self.angle < 2 * math.pi:
            raise GeometryError(f"co-wedge angle {self.angle} not in (pi, 2pi)")

    @classmethod
    def from_angle(cls, theta: float, rotation: float = 0.0, apex: Point = (0.0, 0.0)) -> "CoWedge":
        return cls(apex, (math.cos(rotation), math.sin(rotation)),
                   (math.cos(rotation + theta), math.sin(rotation + theta)))

    @property
    def angle(self) -> float:
        return ccw_angle(self.dir1, self.dir2)

    def complement(self) -> Wedge:
        """The closure of the complement, a wedge of angle 2pi - theta."""
        return Wedge(self.apex, self.dir2, self.dir1)

    def contains(self, x: Point, q: Point = (0.0, 0.0), eps: float = EPS) -> bool:
        v = (x[0] - self.apex[0] - q[0], x[1] - self.apex[1] - q[1])
        return cross(self.dir1, v) >= -eps or cross(v, self.dir2) >= -eps

    def contains_array(self, pts: np.ndarray, q: Point = (0.0, 0.0), eps: float = EPS) -> np.ndarray:
        v = np.asarray(pts, dtype=float) - (self.apex[0] + q[0], self.apex[1] + q[1])
        c1 = self.dir1[0] * v[:, 1] - self.dir1[1] * v[:, 0]
        c2 = v[:, 0] * self.dir2[1] - v[:, 1] * self.dir2[0]
        return (c1 >= -eps) | (c2 >= -eps)


@dataclass(frozen=True)
class Halfplane:
    """Points on the left of the directed line through ``origin`` along ``direction``."""

    origin: Point
    direction: Point

    def __post_init__(self):
        object.__setattr__(self, "direction", unit(self.direction))

    def contains(self, x: Point, q: Point = (0.0, 0.0), eps: float = EPS) -> bool:
        v = (x[0] - self.origin[0] - q[0], x[1] - self.origin[1] - q[1])
        return cross(self.direction, v) >= -eps

    def contains_array(self, pts: np.ndarray, q: Point = (0.0, 0.0), eps: float = EPS) -> np.ndarray:
        v = np.asarray(pts, dtype=float) - (self.origin[0] + q[0], self.origin[1] + q[1])
        return self.direction[0] * v[:, 1] - self.direction[1] * v[:, 0] >= -eps


@dataclass(frozen=True)
class Disc:
    center: Point
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise GeometryError("disc radius must be positive")

    @property
    def diameter(self) -> float:
        return 2 * self.radius

    def contains(self, x: Point, q: Point = (0.0, 0.0), eps: float = EPS) -> bool:
        return dist(x, (self.center[0] + q[0], self.center[1] + q[1])) <= self.radius + eps

    def contains_array(self, pts: np.ndarray, q: Point = (0.0, 0.0), eps: float = EPS) -> np.ndarray:
        v = np.asarray(pts, dtype=float) - (self.center[0] + q[0], self.center[1] + q[1])
        return np.hypot(v[:, 0], v[:, 1]) <= self.radius + eps

    def line_chord(self, p: Point, d: Point):
        return disc_line_chord(self, (p, (p[0] + d[0], p[1] + d[1])))


# ---------------------------------------------------------------------------
# polygons

def _signed_area(cycle: Sequence[Point]) -> float:
    s = 0.0
    for i in range(len(cycle)):
        x0, y0 = cycle[i]
        x1, y1 = cycle[(i + 1) % len(cycle)]
        s += x0 * y1 - x1 * y0
    return s / 2


def _normalize_cycle(cycle: Sequence[Point], ccw: bool) -> tuple[Point, ...]:
    pts = [(float(x), float(y)) for x, y in cycle]
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    # merge collinear neighbours first so no interior angle equals pi
    changed = True
    while changed and len(pts) > 3:
        changed = False
        for i in range(len(pts)):
            u, v, w = pts[i - 1], pts[i], pts[(i + 1) % len(pts)]
            if orient(u, v, w) == 0 or v == u:
                pts.pop(i)
                changed = True
                break
    if len(pts) < 3 or _signed_area(pts) == 0:
        raise GeometryError("degenerate polygon cycle")
    if (_signed_area(pts) > 0) != ccw:
        pts.reverse()
    if len(pts) < 4:
        split = []
        for i, a in enumerate(pts):
            b = pts[(i + 1) % len(pts)]
            split += [a, ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)]
        pts = split
    return tuple(pts)


@dataclass(frozen=True)
class PolygonWithHoles:
    """Outer cycle counterclockwise, holes clockwise, every cycle >= 4 edges.

    Construct through :meth:`normalized` to get the orientation, collinear
    merge and midpoint splitting applied.
    """

    outer: tuple[Point, ...]
    holes: tuple[tuple[Point, ...], ...] = ()

    @classmethod
    def normalized(cls, outer: Sequence[Point], holes: Iterable[Sequence[Point]] = ()) -> "PolygonWithHoles":
        return cls(_normalize_cycle(outer, True), tuple(_normalize_cycle(h, False) for h in holes))

    @property
    def cycles(self) -> tuple[tuple[Point, ...], ...]:
        return (self.outer,) + self.holes

    def edges(self) -> list[tuple[Point, Point]]:
        out = []
        for cyc in self.cycles:
            out += [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
        return out

    def edge_adjacency(self) -> list[tuple[int, int]]:
        """Index pairs of edges sharing a vertex (consecutive on a cycle)."""
        adj, base = [], 0
        for cyc in self.cycles:
            k = len(cyc)
            adj += [(base + i, base + (i + 1) % k) for i in range(k)]
            base += k
        return adj

    def vertices(self) -> list[Point]:
        return [v for cyc in self.cycles for v in cyc]

    @property
    def diameter(self) -> float:
        pts = np.asarray(self.outer)
        d = pts[:, None, :] - pts[None, :, :]
        return float(np.sqrt((d ** 2).sum(-1)).max())

    def bbox(self) -> tuple[Point, Point]:
        pts = np.asarray(self.outer)
        return (tuple(pts.min(0)), tuple(pts.max(0)))

    def contains(self, x: Point, q: Point = (0.0, 0.0), eps: float = EPS) -> bool:
        return bool(self.contains_array(np.asarray([x], dtype=float), q, eps)[0])

    def contains_array(self, pts: np.ndarray, q: Point = (0.0, 0.0), eps: float = EPS) -> np.ndarray:
        p = np.asarray(pts, dtype=float) - np.asarray(q, dtype=float)
        inside = np.zeros(len(p), dtype=bool)
        on_edge = np.zeros(len(p), dtype=bool)
        for a, b in self.edges():
            ax, ay = a
            bx, by = b
            cond = (ay > p[:, 1]) != (by > p[:, 1])
            with np.errstate(divide="ignore", invalid="ignore"):
                xint = ax + (p[:, 1] - ay) * (bx - ax) / (by - ay)
            inside ^= cond & (p[:, 0] < xint)
            dx, dy = bx - ax, by - ay
            t = np.clip(((p[:, 0] - ax) * dx + (p[:, 1] - ay) * dy) / (dx * dx + dy * dy), 0, 1)
            on_edge |= np.hypot(p[:, 0] - ax - t * dx, p[:, 1] - ay - t * dy) <= eps
        return inside | on_edge


Shape = Union[Wedge, CoWedge, Halfplane, Disc, PolygonWithHoles]


def vertex_wedges(poly: PolygonWithHoles) -> list[tuple[Point, Union[Wedge, CoWedge]]]:
    """The (co-)wedge spanned by the interior angle at every vertex, apex at the vertex."""
    out = []
    for cyc in poly.cycles:
        k = len(cyc)
        for i, v in enumerate(cyc):
            u, w = cyc[i - 1], cyc[(i + 1) % k]
            d1 = (w[0] - v[0], w[1] - v[1])
            d2 = (u[0] - v[0], u[1] - v[1])
            sigma = ccw_angle(d1, d2)
            if abs(sigma - math.pi) < 1e-12 or sigma == 0:
                raise GeometryError(f"straight angle at vertex {v}; normalize the polygon first")
            out.append((v, Wedge(v, d1, d2) if sigma < math.pi else CoWedge(v, d1, d2)))
    return out


def min_nonadjacent_edge_distance(poly: PolygonWithHoles) -> float:
    edges = poly.edges()
    adjacent = set()
    for i, j in poly.edge_adjacency():
        adjacent.add((i, j))
        adjacent.add((j, i))
    best = math.inf
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            if (i, j) in adjacent:
                continue
            best = min(best, segment_distance(*edges[i], *edges[j]))
    if not best > 0:
        raise GeometryError("polygon boundary touches itself")
    return best


# ---------------------------------------------------------------------------
# reflection, chords, smallest translates

def reflect(shape):
    """Point reflection through the origin."""
    neg = lambda p: (-p[0], -p[1])  # noqa: E731
    if isinstance(shape, Wedge):
        return Wedge(neg(shape.apex), neg(shape.dir1), neg(shape.dir2))
    if isinstance(shape, CoWedge):
        return CoWedge(neg(shape.apex), neg(shape.dir1), neg(shape.dir2))
    if isinstance(shape, Halfplane):
        return Halfplane(neg(shape.origin), neg(shape.direction))
    if isinstance(shape, Disc):
        return Disc(neg(shape.center), shape.radius)
    if isinstance(shape, PolygonWithHoles):
        # negation is a rotation by pi, so orientation is already preserved
        return PolygonWithHoles(tuple(neg(p) for p in shape.outer),
                                tuple(tuple(neg(p) for p in h) for h in shape.holes))
    raise TypeError(f"cannot reflect {type(shape).__name__}")


def disc_line_chord(d: Disc, line: tuple[Point, Point]):
    """Intersection of a disc with a line given by two distinct points.

    Returns ``None`` when empty, a single point on tangency, else the chord
    as a pair of points ordered along the line direction.
    """
    (p, r) = line
    dx, dy = r[0] - p[0], r[1] - p[1]
    L = math.hypot(dx, dy)
    if L == 0:
        raise GeometryError("line needs two distinct points")
    ux, uy = dx / L, dy / L
    cx, cy = d.center
    t0 = (cx - p[0]) * ux + (cy - p[1]) * uy
    fx, fy = p[0] + t0 * ux, p[1] + t0 * uy
    h2 = d.radius ** 2 - ((cx - fx) ** 2 + (cy - fy) ** 2)
    if h2 < -EPS * d.radius:
        return None
    if h2 <= EPS * d.radius:
        return (fx, fy)
    h = math.sqrt(h2)
    return ((fx - h * ux, fy - h * uy), (fx + h * ux, fy + h * uy))


def wedge_to_quadrant_map(w: Wedge) -> AffineMap:
    """Affine map sending ``w`` onto the closed north-east quadrant at the origin.

    Since the map is affine, ``p`` lies in ``w + q`` iff ``f(p) - f(apex + q)``
    is componentwise non-negative.
    """
    return _cone_map(w.apex, w.dir1, w.dir2)


def smallest_wedge_translate(w: Wedge, A) -> Point:
    """Apex of the smallest translate of ``w`` containing every point of ``A``."""
    pts = np.asarray(A, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise GeometryError("smallest translate of an empty set")
    f = wedge_to_quadrant_map(w)
    uv = f.apply_array(pts)
    corner = tuple(uv.min(axis=0))
    apex = f.inverse()(corner)
    return (float(apex[0]), float(apex[1]))


def translate_of(shape, apex: Point) -> Point:
    """The translate parameter q that puts the shape's apex/center at ``apex``."""
    base = shape.apex if isinstance(shape, (Wedge, CoWedge)) else shape.center
    return (apex[0] - base[0], apex[1] - base[1])


# ---------------------------------------------------------------------------
# general position

def check_general_position(points, tol: float = 1e-14, collinear: bool = True) -> None:
    """Raise GeometryError for duplicates, equal pairwise distances or
    (optionally) three collinear points."""
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    n = len(P)
    if n < 2:
        return
    if not np.isfinite(P).all():
        raise GeometryError("non-finite coordinates")
    d = np.sqrt(((P[:, None, :] - P[None, :, :]) ** 2).sum(-1))[np.triu_indices(n, 1)]
    if d.min() == 0:
        raise GeometryError("duplicate points")
    ds = np.sort(d)
    if len(ds) > 1 and (np.diff(ds) <= tol * ds[1:]).any():
        raise GeometryError("two pairs share a distance")
    if collinear and n >= 3:
        for i in range(n - 2):
            u = P[i + 1:] - P[i]
            c = u[:, None, 0] * u[None, :, 1] - u[:, None, 1] * u[None, :, 0]
            norms = np.hypot(u[:, 0], u[:, 1])
            c = np.abs(c) / (norms[:, None] * norms[None, :])
            iu = np.triu_indices(len(u), 1)
            if len(iu[0]) and c[iu].min() <= tol:
                raise GeometryError("three collinear points")


def perturb(points, seed: int = 0, scale: float = 1e-7) -> np.ndarray:
    """Seeded jitter, relative to the bounding box, to repair degenerate input."""
    P = np.asarray(points, dtype=float).reshape(-1, 2)
    span = float(np.ptp(P, axis=0).max()) if len(P) > 1 else 1.0
    rng = np.random.default_rng(seed)
    return P + rng.uniform(-1, 1, P.shape) * scale * max(span, 1.0)
