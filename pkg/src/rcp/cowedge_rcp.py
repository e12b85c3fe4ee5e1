"""Range closest-pair queries for translates of a fixed co-wedge.

Work in the frame of the complementary wedge, where the query co-wedge
with apex ``Q`` is ``{u <= Q1} | {v <= Q2}``.  A point ``a`` lies in it iff
``Q`` is not strictly south-west of ``a``, so the pair region ``D_i`` is the
complement of two open south-west quadrants: a staircase with at most four
edges and three vertices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .candidates import CandidateSet, cowedge_candidates
from .geometry import CoWedge, Point, PointPair, wedge_to_quadrant_map
from .subdivision import IndexedSubdivision, planarize_axis_segments
from .wedge_rcp import OverlayAudit, _bbox

INF = math.inf


def _staircase_edges(a, b):
    """Boundary of the union of the open south-west quadrants of ``a`` and
    ``b`` as axis-parallel edges; rays run to ``-inf``."""
    (ua, va), (ub, vb) = sorted([tuple(a), tuple(b)])
    if va <= vb:  # one quadrant contains the other
        return [((-INF, vb), (ub, vb)), ((ub, -INF), (ub, vb))]
    return [((-INF, va), (ua, va)), ((ua, vb), (ua, va)),
            ((ua, vb), (ub, vb)), ((ub, -INF), (ub, vb))]


@dataclass(frozen=True)
class CoWedgeRegion:
    """``D = {q : a, b in C + q}``, kept in the complementary quadrant frame."""

    shape: CoWedge
    a: Point
    b: Point

    def _frame(self):
        return wedge_to_quadrant_map(self.shape.complement())

    def _uv(self):
        f = self._frame()
        return f(self.a), f(self.b)

    def contains(self, q) -> bool:
        f = self._frame()
        Q = f((self.shape.apex[0] + q[0], self.shape.apex[1] + q[1]))
        return all(not (Q[0] < p[0] and Q[1] < p[1]) for p in self._uv())

    @property
    def vertices(self) -> list:
        f = self._frame().inverse()
        pts = {e[1] for e in _staircase_edges(*self._uv())}
        pts |= {e[0] for e in _staircase_edges(*self._uv()) if -INF not in e[0]}
        out = []
        for p in sorted(pts):
            x = f(p)
            out.append((x[0] - self.shape.apex[0], x[1] - self.shape.apex[1]))
        return out

    @property
    def edges(self) -> list:
        """``(start, end)`` in translate space; rays as ``(start, direction, None)``."""
        f = self._frame()
        inv = f.inverse()
        ax, ay = self.shape.apex
        out = []
        for p, q in _staircase_edges(*self._uv()):
            end = inv(q)
            end = (end[0] - ax, end[1] - ay)
            if -INF in p:
                d = (-1.0, 0.0) if p[0] == -INF else (0.0, -1.0)
                out.append((end, inv.apply_linear(d), None))
            else:
                s = inv(p)
                out.append(((s[0] - ax, s[1] - ay), end))
        return out


def region_of_pair(C: CoWedge, a, b) -> CoWedgeRegion:
    if tuple(a) == tuple(b):
        raise ValueError("pair points must differ")
    return CoWedgeRegion(C, (float(a[0]), float(a[1])), (float(b[0]), float(b[1])))


def _maximal(corners):
    out = []
    best = -INF
    for u, v in sorted(corners, key=lambda c: (-c[0], -c[1])):
        if v > best:
            out.append((u, v))
            best = v
    return out[::-1]


class CoWedgeRcp:
    def __init__(self, S, c: CoWedge, cands: Optional[CandidateSet] = None, seed: int = 0):
        self.c = c
        self.S = np.asarray(S, dtype=float).reshape(-1, 2)
        self.frame = wedge_to_quadrant_map(c.complement())
        self.cands = cands if cands is not None else cowedge_candidates(self.S, c)
        uv = self.frame.apply_array(self.S) if len(self.S) else np.zeros((0, 2))
        self.A = np.array([uv[p.ia] for p in self.cands]).reshape(-1, 2)
        self.B = np.array([uv[p.ib] for p in self.cands]).reshape(-1, 2)
        self.bbox = _bbox(uv)
        segs, self.audit, _ = self._overlay()
        self.sub = IndexedSubdivision(planarize_axis_segments(segs), self._labels, self.bbox,
                                      to_frame=self._to_frame, seed=seed)

    def _overlay(self, keep_snapshots: bool = False):
        (lu, lv), (hu, hv) = self.bbox
        K = [(hu, hv)]  # maximal corners of the not-yet-covered region
        segs, audit, snaps = [], OverlayAudit(), []
        for a, b in zip(self.A, self.B):
            new_pts = set()
            for p, q in _staircase_edges(a, b):
                ray = -INF in p
                p = (max(p[0], lu), max(p[1], lv))
                if p[1] == q[1]:  # horizontal at v = q[1]
                    g = max((cu for cu, cv in K if cv > q[1]), default=-INF)
                    end = min(q[0], g)
                    if end > p[0]:
                        segs.append((p, (end, q[1])))
                        new_pts.add((end, q[1]))
                        if not ray:
                            new_pts.add(p)
                else:  # vertical at u = q[0]
                    h = max((cv for cu, cv in K if cu > q[0]), default=-INF)
                    end = min(q[1], h)
                    if end > p[1]:
                        segs.append((p, (q[0], end)))
                        new_pts.add((q[0], end))
                        if not ray:
                            new_pts.add(p)
            audit.new_vertices.append(len(new_pts))
            K = _maximal([(min(cu, x[0]), min(cv, x[1])) for cu, cv in K for x in (a, b)])
            if keep_snapshots:
                snaps.append(list(K))
        segs += [((lu, lv), (hu, lv)), ((hu, lv), (hu, hv)),
                 ((hu, hv), (lu, hv)), ((lu, hv), (lu, lv))]
        return segs, audit, snaps

    def uncovered_staircases(self) -> list:
        """Maximal corners of the region not yet covered, after each overlay step."""
        return self._overlay(keep_snapshots=True)[2]

    def _labels(self, P, chunk: int = 4096):
        out = np.full(len(P), -1, dtype=int)
        if len(self.A) == 0:
            return out
        A, B = self.A, self.B
        for s in range(0, len(P), chunk):
            X = P[s: s + chunk]
            inA = (X[:, None, 0] < A[None, :, 0]) & (X[:, None, 1] < A[None, :, 1])
            inB = (X[:, None, 0] < B[None, :, 0]) & (X[:, None, 1] < B[None, :, 1])
            ok = ~(inA | inB)
            has = ok.any(axis=1)
            out[s: s + chunk][has] = ok.argmax(axis=1)[has]
        return out

    def _to_frame(self, q):
        return self.frame((self.c.apex[0] + q[0], self.c.apex[1] + q[1]))

    def query(self, q) -> Optional[PointPair]:
        i = self.sub.locate(q)
        return None if i < 0 else self.cands[int(i)].pair

    def stats(self) -> dict:
        return {"n": len(self.S), "candidates": len(self.cands),
                "overlay_vertices": self.audit.total, "max_step_vertices": self.audit.max_step,
                "segments": len(self.sub.segments),
                "trapezoids": self.sub.locator.n_trapezoids}


def build(S, C: CoWedge, **kw) -> CoWedgeRcp:
    return CoWedgeRcp(S, C, **kw)


def query(st: CoWedgeRcp, q) -> Optional[PointPair]:
    return st.query(q)
