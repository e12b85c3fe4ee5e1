"""Range reporting for translates of a polygon with holes.

Points are bucketed in a grid fine enough that every cell meets at most two
(adjacent) boundary edges of any translate; inside such a cell the translate
coincides with the wedge or co-wedge of one polygon vertex.  Wedges are
answered by a priority search tree in the wedge's cross-product frame,
co-wedges as a union of two halfplanes answered from convex layers.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import (EPS, GeometryError, PolygonWithHoles, Wedge,
                       segment_meets_box, vertex_wedges)


# ---------------------------------------------------------------------------
# priority search tree


class PrioritySearchTree:
    """Static PST: reports indices with ``x >= x0`` and ``y >= y0``.

    Nodes are stored in flat arrays; the root holds the point of maximum y
    and the rest split at the median x.
    """

    def __init__(self, xs, ys):
        xs, ys = np.asarray(xs, float), np.asarray(ys, float)
        self.n = len(xs)
        self.px, self.py, self.pid, self.split = [], [], [], []
        self.left, self.right = [], []
        self._xs, self._ys = xs, ys
        self.root = self._build(list(np.argsort(xs, kind="stable")))

    def _build(self, idx):
        if not idx:
            return -1
        top = max(idx, key=lambda i: self._ys[i])
        rest = [i for i in idx if i != top]
        node = len(self.px)
        self.px.append(self._xs[top])
        self.py.append(self._ys[top])
        self.pid.append(int(top))
        mid = len(rest) // 2
        self.split.append(self._xs[rest[mid - 1]] if rest else math.inf)
        self.left.append(-1)
        self.right.append(-1)
        lo, hi = rest[:mid], rest[mid:]
        self.left[node] = self._build(lo)
        self.right[node] = self._build(hi)
        return node

    def query(self, x0: float, y0: float) -> list:
        out, stack = [], [self.root]
        px, py, split, left, right = self.px, self.py, self.split, self.left, self.right
        while stack:
            v = stack.pop()
            if v < 0 or py[v] < y0:
                continue
            if px[v] >= x0:
                out.append(self.pid[v])
            if split[v] >= x0:
                stack.append(left[v])
            stack.append(right[v])
        return out


# ---------------------------------------------------------------------------
# convex layers


def _hull(P: np.ndarray, idx: list) -> list:
    """Strictly convex hull, counterclockwise, of ``P[idx]`` (monotone chain)."""
    idx = sorted(idx, key=lambda i: (P[i, 0], P[i, 1]))
    if len(idx) <= 2:
        return idx

    def turn(o, a, b):
        return (P[a, 0] - P[o, 0]) * (P[b, 1] - P[o, 1]) - (P[a, 1] - P[o, 1]) * (P[b, 0] - P[o, 0])

    lower, upper = [], []
    for i in idx:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    for i in reversed(idx):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


class ConvexLayers:
    """Onion peeling; halfplane queries walk layers from the outside in and
    stop at the first layer with no reported vertex."""

    def __init__(self, P):
        self.P = np.asarray(P, dtype=float).reshape(-1, 2)
        self.layers, self.angles = [], []
        rest = list(range(len(self.P)))
        while rest:
            h = _hull(self.P, rest)
            self.layers.append(h)
            hs = set(h)
            rest = [i for i in rest if i not in hs]
            self.angles.append(self._edge_angles(h))

    def _edge_angles(self, h):
        if len(h) < 3:
            return None
        V = self.P[h]
        D = np.roll(V, -1, axis=0) - V
        a = np.arctan2(D[:, 1], D[:, 0])
        return ((a - a[0]) % (2 * math.pi)).tolist(), float(a[0])

    def _extreme(self, k, nx, ny) -> int:
        h, ang = self.layers[k], self.angles[k]
        if ang is None:
            vals = [nx * self.P[i, 0] + ny * self.P[i, 1] for i in h]
            return int(np.argmax(vals))
        rel, a0 = ang
        target = (math.atan2(ny, nx) + math.pi / 2 - a0) % (2 * math.pi)
        return bisect.bisect_left(rel, target) % len(h)

    def halfplane(self, nx: float, ny: float, t: float) -> list:
        """Indices with ``nx*x + ny*y >= t``."""
        out = []
        P = self.P
        for k, h in enumerate(self.layers):
            m = len(h)
            j = self._extreme(k, nx, ny)
            f = lambda i: nx * P[h[i], 0] + ny * P[h[i], 1] >= t  # noqa: E731
            if not f(j):
                break
            out.append(h[j])
            s = 1
            while s < m and f((j + s) % m):
                out.append(h[(j + s) % m])
                s += 1
            e = 1
            while e < m - s + 1 and f((j - e) % m):
                out.append(h[(j - e) % m])
                e += 1
        return out


# ---------------------------------------------------------------------------
# grid


def _cross_frame(W):
    """Linear functionals ``s1 = d1 x X``, ``s2 = X x d2`` of a (co-)wedge."""
    (a, b), (c, d) = W.dir1, W.dir2
    return np.array([[-b, a], [d, -c]])


@dataclass
class _Cell:
    idx: np.ndarray
    pts: np.ndarray
    structs: list = field(default_factory=list)


class ReportingGrid:
    """Per nonempty cell of width ``width``: one reporting structure per
    polygon vertex, all sharing the cell's point array."""

    def __init__(self, S, poly: PolygonWithHoles, delta: float, width: float = None, eps: float = EPS):
        self.S = np.asarray(S, dtype=float).reshape(-1, 2)
        self.poly = poly
        self.delta = delta
        self.w = width if width is not None else delta / 2
        self.eps = eps
        self.edges = poly.edges()
        self.wedges = vertex_wedges(poly)
        self._adj = {}
        for i, j in poly.edge_adjacency():
            self._adj[(i, j)] = j  # shared vertex index = start of the later edge
            self._adj[(j, i)] = j
        keys = np.floor(self.S / self.w).astype(np.int64)
        self.cells = {}
        if len(self.S):
            order = np.lexsort((keys[:, 1], keys[:, 0]))
            ks = keys[order]
            brk = np.flatnonzero(np.any(np.diff(ks, axis=0) != 0, axis=1)) + 1
            for grp in np.split(order, brk):
                key = (int(keys[grp[0], 0]), int(keys[grp[0], 1]))
                self.cells[key] = self._build_cell(grp)
        self.frames = [_cross_frame(W) for _, W in self.wedges]

    def _build_cell(self, grp):
        pts = self.S[grp]
        cell = _Cell(grp, pts)
        for _, W in self.wedges:
            F = _cross_frame(W)
            s = pts @ F.T
            if isinstance(W, Wedge):
                cell.structs.append(PrioritySearchTree(s[:, 0], s[:, 1]))
            else:
                cell.structs.append(ConvexLayers(pts))
        return cell

    @property
    def stored_points(self) -> int:
        return sum(len(c.idx) * len(c.structs) for c in self.cells.values())

    def cell_box(self, key):
        return ((key[0] * self.w, key[1] * self.w), ((key[0] + 1) * self.w, (key[1] + 1) * self.w))

    def cells_meeting_bbox(self, lo, hi) -> list:
        i0, j0 = int(math.floor(lo[0] / self.w)), int(math.floor(lo[1] / self.w))
        i1, j1 = int(math.floor(hi[0] / self.w)), int(math.floor(hi[1] / self.w))
        if (i1 - i0 + 1) * (j1 - j0 + 1) <= len(self.cells):
            return [(i, j) for i in range(i0, i1 + 1) for j in range(j0, j1 + 1) if (i, j) in self.cells]
        return [k for k in self.cells if i0 <= k[0] <= i1 and j0 <= k[1] <= j1]

    def classify(self, box, q):
        """``("out",)``, ``("in",)`` or ``("vertex", v)`` for a box vs ``poly + q``."""
        lo, hi = box
        hits = [e for e, (a, b) in enumerate(self.edges)
                if segment_meets_box((a[0] + q[0], a[1] + q[1]), (b[0] + q[0], b[1] + q[1]), lo, hi)]
        if not hits:
            c = ((lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2)
            return ("in",) if self.poly.contains(c, q) else ("out",)
        if len(hits) == 1:
            return ("vertex", hits[0])
        if len(hits) == 2 and (hits[0], hits[1]) in self._adj:
            return ("vertex", self._adj[(hits[0], hits[1])])
        raise GeometryError(f"cell meets non-adjacent edges {hits}; grid too coarse")

    def report(self, q) -> np.ndarray:
        """Indices into ``S`` of the points in ``poly + q``."""
        (x0, y0), (x1, y1) = self.poly.bbox()
        lo, hi = (x0 + q[0], y0 + q[1]), (x1 + q[0], y1 + q[1])
        out = []
        for key in self.cells_meeting_bbox(lo, hi):
            cell = self.cells[key]
            kind = self.classify(self.cell_box(key), q)
            if kind[0] == "out":
                continue
            if kind[0] == "in":
                out.append(cell.idx)
                continue
            v = kind[1]
            apex, W = self.wedges[v]
            a = (apex[0] + q[0], apex[1] + q[1])
            F = self.frames[v]
            s0 = F @ np.asarray(a)
            st = cell.structs[v]
            if isinstance(W, Wedge):
                loc = st.query(s0[0] - self.eps, s0[1] - self.eps)
            else:
                loc = set(st.halfplane(F[0, 0], F[0, 1], s0[0] - self.eps))
                loc.update(st.halfplane(F[1, 0], F[1, 1], s0[1] - self.eps))
                loc = list(loc)
            out.append(cell.idx[np.asarray(loc, dtype=int)])
        return np.concatenate(out) if out else np.zeros(0, dtype=int)


def build(S, poly: PolygonWithHoles, delta: float) -> ReportingGrid:
    return ReportingGrid(S, poly, delta)


def report(g: ReportingGrid, q) -> np.ndarray:
    return g.report(q)
