"""Randomized incremental trapezoidal map over segments and circular arcs.

The map is built in a frame rotated by a fixed irrational-looking angle so
that axis-parallel input (staircases) has no vertical pieces.  Each input
curve is cut into x-monotone pieces in that frame.  Faces are not stored
explicitly: every trapezoid is labelled by evaluating a caller-supplied
labelling function on one interior sample.

Tie rule: a query lying within ``tol`` of a piece, or on the vertical wall
through an endpoint, is resolved as the point ``q + (t, t)`` for an
infinitesimal ``t > 0`` (up and to the right in the input frame).
"""
from __future__ import annotations

import math
import random
from typing import Callable, Hashable, Sequence

import numpy as np

from .curves import Arc, Curve, Segment
from .geometry import GeometryError, Point

ROTATION = 0.4142135623730951  # sqrt(2) - 1 radians

LabelFn = Callable[[np.ndarray], Sequence[Hashable]]


class CrossingError(GeometryError):
    """Two input curves cross in their interiors."""

    def __init__(self, first, second):
        super().__init__(f"curves cross: {first!r} and {second!r}")
        self.pair = (first, second)


class _Piece:
    """x-monotone piece in the rotated frame, ``p`` left of ``q``."""

    __slots__ = ("p", "q", "cx", "cy", "r", "upper", "src", "dx", "dy")

    def __init__(self, p, q, src, cx=0.0, cy=0.0, r=None, upper=True):
        self.p, self.q, self.src = p, q, src
        self.cx, self.cy, self.r, self.upper = cx, cy, r, upper
        self.dx, self.dy = q[0] - p[0], q[1] - p[1]

    def y_at(self, x: float) -> float:
        if self.r is None:
            if self.dx == 0:
                return self.p[1]
            return self.p[1] + (x - self.p[0]) * self.dy / self.dx
        d = self.r * self.r - (x - self.cx) ** 2
        s = math.sqrt(d) if d > 0 else 0.0
        return self.cy + s if self.upper else self.cy - s

    def slope_at(self, x: float) -> float:
        if self.r is None:
            return self.dy / self.dx if self.dx else math.inf
        d = self.r * self.r - (x - self.cx) ** 2
        if d <= 0:
            return -math.inf if (self.upper == (x > self.cx)) else math.inf
        s = -(x - self.cx) / math.sqrt(d)
        return s if self.upper else -s


class _Trap:
    __slots__ = ("top", "bottom", "leftp", "rightp", "node", "label")

    def __init__(self, top, bottom, leftp, rightp):
        self.top, self.bottom, self.leftp, self.rightp = top, bottom, leftp, rightp
        self.node = None
        self.label = None


class _Node:
    # kind 0: leaf(trap); 1: x-node(pt, a=left, b=right); 2: y-node(piece, a=above, b=below)
    __slots__ = ("kind", "trap", "pt", "piece", "a", "b")

    def __init__(self, trap=None):
        self.kind = 0
        self.trap = trap
        if trap is not None:
            trap.node = self

    def become_x(self, pt, left, right):
        self.kind, self.trap, self.pt, self.a, self.b = 1, None, pt, left, right

    def become_y(self, piece, above, below):
        self.kind, self.trap, self.piece, self.a, self.b = 2, None, piece, above, below


def _leaf(trap) -> _Node:
    return _Node(trap)


class Locator:
    """Point location over a set of interior-disjoint segments and arcs.

    Parameters
    ----------
    curves:
        Segments and arcs meeting only at shared endpoints (identical tuples).
    label_fn:
        Vectorized labelling oracle ``(N, 2) array -> N labels`` evaluated on
        one interior sample per trapezoid.
    bbox:
        ``((xmin, ymin), (xmax, ymax))`` of the region served; computed from
        the curves when omitted.
    outside, clamp:
        Queries outside ``bbox`` are clamped into it when ``clamp`` is true,
        else answered with ``outside``.
    """

    def __init__(self, curves: Sequence[Curve], label_fn: LabelFn, *, bbox=None,
                 outside: Hashable = None, clamp: bool = False, seed: int = 0,
                 angle: float = ROTATION):
        self.cos, self.sin = math.cos(angle), math.sin(angle)
        self.clamp, self.outside = clamp, outside
        self._rot_cache: dict[Point, Point] = {}
        pieces = []
        for c in curves:
            pieces.extend(self._pieces(c))
        self.n_curves = len(curves)
        self.n_pieces = len(pieces)
        if bbox is None:
            bbox = _curves_bbox(curves)
        (x0, y0), (x1, y1) = bbox
        self.bbox = ((float(x0), float(y0)), (float(x1), float(y1)))
        corners = [self._rot((x, y)) for x in (x0, x1) for y in (y0, y1)]
        xs = [c[0] for c in corners] + [pc.p[0] for pc in pieces] + [pc.q[0] for pc in pieces]
        ys = [c[1] for c in corners] + [min(pc.p[1], pc.q[1]) - (pc.r or 0) for pc in pieces] \
            + [max(pc.p[1], pc.q[1]) + (pc.r or 0) for pc in pieces]
        span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        self.tol = 1e-9 * span
        m = 0.1 * span
        lx, rx, by, ty = min(xs) - m, max(xs) + m, min(ys) - m, max(ys) + m
        top = _Piece((lx, ty), (rx, ty), None)
        bottom = _Piece((lx, by), (rx, by), None)
        first = _Trap(top, bottom, (lx, by), (rx, by))
        self.root = _leaf(first)
        self._live = {first}
        order = list(range(len(pieces)))
        random.Random(seed).shuffle(order)
        for i in order:
            self._insert(pieces[i])
        self.traps = list(self._live)
        del self._live
        self._label(label_fn)

    # -- frame handling -------------------------------------------------

    def _rot(self, p: Point) -> Point:
        r = self._rot_cache.get(p)
        if r is None:
            r = (p[0] * self.cos - p[1] * self.sin, p[0] * self.sin + p[1] * self.cos)
            self._rot_cache[p] = r
        return r

    def _unrot(self, x: np.ndarray) -> np.ndarray:
        c, s = self.cos, self.sin
        return np.stack([x[:, 0] * c + x[:, 1] * s, -x[:, 0] * s + x[:, 1] * c], axis=1)

    def _pieces(self, c: Curve) -> list[_Piece]:
        if isinstance(c, Segment):
            a, b = self._rot(c.p), self._rot(c.q)
            if b < a:
                a, b = b, a
            return [_Piece(a, b, c)]
        if not isinstance(c, Arc):
            raise TypeError(f"unsupported curve {c!r}")
        ctr = self._rot(c.center)
        cx, cy, r = ctr[0], ctr[1], c.radius
        phi = math.atan2(self.sin, self.cos)
        a0 = (c.start + phi) % (2 * math.pi)
        sw = c.sweep
        cuts = sorted(o for o in ((0.0 - a0) % (2 * math.pi), (math.pi - a0) % (2 * math.pi))
                      if 1e-12 < o < sw - 1e-12)
        pts = [self._rot(c.p)]
        for o in cuts:
            ang = (a0 + o) % (2 * math.pi)
            pts.append((cx + r, cy) if abs(ang) < 1e-6 or abs(ang - 2 * math.pi) < 1e-6 else (cx - r, cy))
        pts.append(self._rot(c.q))
        offs = [0.0] + cuts + [sw]
        out = []
        for i in range(len(pts) - 1):
            mid = a0 + (offs[i] + offs[i + 1]) / 2
            upper = math.sin(mid) > 0
            u, v = pts[i], pts[i + 1]
            if v < u:
                u, v = v, u
            if u == v:
                continue
            out.append(_Piece(u, v, c, cx, cy, r, upper))
        return out

    # -- construction ---------------------------------------------------

    def _find_on(self, s: _Piece, x0: float) -> _Trap:
        """Trapezoid containing the part of ``s`` just right of abscissa ``x0``."""
        node = self.root
        while node.kind:
            if node.kind == 1:
                node = node.a if x0 < node.pt[0] else node.b
            else:
                c = node.piece
                diff = s.y_at(x0) - c.y_at(x0)
                if abs(diff) <= self.tol:
                    xm = (x0 + min(s.q[0], c.q[0])) / 2
                    diff = s.y_at(xm) - c.y_at(xm)
                node = node.a if diff > 0 else node.b
        return node.trap

    def _check_between(self, s: _Piece, t: _Trap):
        xa, xb = max(t.leftp[0], s.p[0]), min(t.rightp[0], s.q[0])
        for x in (xa, (xa + xb) / 2, xb):
            y = s.y_at(x)
            if y > t.top.y_at(x) + 1e3 * self.tol:
                raise CrossingError(s.src, t.top.src)
            if y < t.bottom.y_at(x) - 1e3 * self.tol:
                raise CrossingError(s.src, t.bottom.src)

    def _insert(self, s: _Piece):
        p, q = s.p, s.q
        crossed = [self._find_on(s, p[0])]
        while crossed[-1].rightp[0] < q[0]:
            nxt = self._find_on(s, crossed[-1].rightp[0])
            if nxt is crossed[-1]:
                raise GeometryError("trapezoid walk stalled")
            crossed.append(nxt)
        for t in crossed:
            self._check_between(s, t)

        first, last = crossed[0], crossed[-1]
        A = _Trap(first.top, first.bottom, first.leftp, p) if first.leftp[0] < p[0] else None
        B = _Trap(last.top, last.bottom, q, last.rightp) if q[0] < last.rightp[0] else None

        ups, los = [], []
        cur_up = _Trap(first.top, s, p, None)
        cur_lo = _Trap(s, first.bottom, p, None)
        for j, t in enumerate(crossed):
            ups.append(cur_up)
            los.append(cur_lo)
            if j + 1 < len(crossed):
                r = t.rightp
                nxt = crossed[j + 1]
                if r[1] > s.y_at(r[0]):
                    cur_up.rightp = r
                    cur_up = _Trap(nxt.top, s, r, None)
                else:
                    cur_lo.rightp = r
                    cur_lo = _Trap(s, nxt.bottom, r, None)
        cur_up.rightp = q
        cur_lo.rightp = q

        leaves = {}

        def leaf(t):
            n = leaves.get(id(t))
            if n is None:
                n = leaves[id(t)] = _leaf(t)
            return n

        for j, t in enumerate(crossed):
            node = t.node
            ysub = _Node()
            ysub.become_y(s, leaf(ups[j]), leaf(los[j]))
            sub = ysub
            if j == len(crossed) - 1 and B is not None:
                xq = _Node()
                xq.become_x(q, sub, leaf(B))
                sub = xq
            if j == 0 and A is not None:
                xp = _Node()
                xp.become_x(p, leaf(A), sub)
                sub = xp
            if sub is ysub:
                node.become_y(s, ysub.a, ysub.b)
            else:
                node.become_x(sub.pt, sub.a, sub.b)
            self._live.discard(t)
        for t in set(ups) | set(los) | {A, B}:
            if t is not None:
                self._live.add(t)

    def _label(self, label_fn: LabelFn):
        samples = np.empty((len(self.traps), 2))
        for i, t in enumerate(self.traps):
            xm = (t.leftp[0] + t.rightp[0]) / 2
            samples[i] = (xm, (t.top.y_at(xm) + t.bottom.y_at(xm)) / 2)
        labels = label_fn(self._unrot(samples)) if len(samples) else []
        for t, lab in zip(self.traps, labels):
            t.label = lab

    # -- queries --------------------------------------------------------

    def _prepare(self, q: Point):
        (x0, y0), (x1, y1) = self.bbox
        x, y = float(q[0]), float(q[1])
        if not (x0 <= x <= x1 and y0 <= y <= y1):
            if not self.clamp:
                return None
            x, y = min(max(x, x0), x1), min(max(y, y0), y1)
        return (x * self.cos - y * self.sin, x * self.sin + y * self.cos)

    def _descend(self, r: Point):
        bx, by = self.cos - self.sin, self.sin + self.cos  # rotated (1, 1)
        node, steps = self.root, 0
        while node.kind:
            steps += 1
            if node.kind == 1:
                dx = r[0] - node.pt[0]
                if dx == 0:
                    dx = bx
                node = node.a if dx < 0 else node.b
            else:
                c = node.piece
                diff = r[1] - c.y_at(r[0])
                if abs(diff) <= self.tol:
                    # up-normal of the piece is (-slope, 1)
                    diff = by - bx * c.slope_at(r[0])
                node = node.a if diff >= 0 else node.b
        return node.trap, steps

    def locate(self, q: Point):
        r = self._prepare(q)
        if r is None:
            return self.outside
        return self._descend(r)[0].label

    def path_length(self, q: Point) -> int:
        r = self._prepare(q)
        return 0 if r is None else self._descend(r)[1]

    @property
    def n_trapezoids(self) -> int:
        return len(self.traps)


def _curves_bbox(curves: Sequence[Curve], margin: float = 1.0):
    xs, ys = [], []
    for c in curves:
        if isinstance(c, Arc):
            xs += [c.center[0] - c.radius, c.center[0] + c.radius]
            ys += [c.center[1] - c.radius, c.center[1] + c.radius]
        else:
            xs += [c.p[0], c.q[0]]
            ys += [c.p[1], c.q[1]]
    if not xs:
        return ((-margin, -margin), (margin, margin))
    return ((min(xs) - margin, min(ys) - margin), (max(xs) + margin, max(ys) + margin))


def build_locator(fragments: Sequence[Curve], label_fn: LabelFn, **kw) -> Locator:
    return Locator(fragments, label_fn, **kw)


def locate(loc: Locator, q: Point):
    return loc.locate(q)
