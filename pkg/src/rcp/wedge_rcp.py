"""Range closest-pair queries for translates of a fixed wedge.

In the wedge's quadrant frame a pair lies in the query translate iff the
query apex is dominated by the componentwise minimum of the two mapped
points.  Candidates are overlaid in length order as south-west quadrants;
each face keeps the least index covering it.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .candidates import CandidateSet, wedge_candidates
from .geometry import PointPair, Wedge, wedge_to_quadrant_map
from .subdivision import IndexedSubdivision, first_dominating, planarize_axis_segments


@dataclass
class OverlayAudit:
    """Vertices created per overlay step, counted for unbounded regions
    (clipping at the bounding box adds none)."""

    new_vertices: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.new_vertices)

    @property
    def max_step(self) -> int:
        return max(self.new_vertices, default=0)


class Staircase:
    """Maximal corners of a union of south-west quadrants, sorted by u
    (so v is decreasing)."""

    def __init__(self):
        self.us, self.vs = [], []

    def __len__(self):
        return len(self.us)

    def dominated(self, c) -> bool:
        k = bisect.bisect_left(self.us, c[0])
        return k < len(self.us) and self.vs[k] >= c[1]

    def hit_left(self, v) -> Optional[float]:
        """max{u : corner with v_c >= v}, where a leftward ray at height v stops."""
        p = self._count_v_at_least(v)
        return self.us[p - 1] if p else None

    def hit_down(self, u) -> Optional[float]:
        """max{v : corner with u_c >= u}."""
        k = bisect.bisect_left(self.us, u)
        return self.vs[k] if k < len(self.us) else None

    def _count_v_at_least(self, v) -> int:
        # vs is decreasing; count entries >= v
        lo, hi = 0, len(self.vs)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.vs[mid] >= v:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def _count_v_above(self, v) -> int:
        lo, hi = 0, len(self.vs)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.vs[mid] > v:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def insert(self, c) -> None:
        # drop corners with u <= cu and v <= cv; corners may share a coordinate
        p = self._count_v_above(c[1])
        k = bisect.bisect_right(self.us, c[0])
        del self.us[p:k], self.vs[p:k]
        self.us.insert(p, c[0])
        self.vs.insert(p, c[1])


class WedgeRcp:
    def __init__(self, S, w: Wedge, cands: Optional[CandidateSet] = None, seed: int = 0):
        self.w = w
        self.S = np.asarray(S, dtype=float).reshape(-1, 2)
        self.frame = wedge_to_quadrant_map(w)
        self.cands = cands if cands is not None else wedge_candidates(self.S, w)
        uv = self.frame.apply_array(self.S) if len(self.S) else np.zeros((0, 2))
        self.corners = np.array([np.minimum(uv[c.ia], uv[c.ib]) for c in self.cands]).reshape(-1, 2)
        self.audit = OverlayAudit()
        self.bbox = _bbox(np.vstack([uv, self.corners]) if len(uv) else np.zeros((0, 2)))
        segs = self._overlay()
        self.sub = IndexedSubdivision(planarize_axis_segments(segs), self._labels, self.bbox,
                                      to_frame=self._to_frame, seed=seed)

    def _overlay(self):
        (lu, lv), _ = self.bbox
        st = Staircase()
        segs = []
        for c in self.corners:
            cu, cv = float(c[0]), float(c[1])
            if st.dominated((cu, cv)):
                self.audit.new_vertices.append(0)
                continue
            hu, hv = st.hit_left(cv), st.hit_down(cu)
            self.audit.new_vertices.append(1 + (hu is not None) + (hv is not None))
            segs.append(((lu if hu is None else hu, cv), (cu, cv)))
            segs.append(((cu, lv if hv is None else hv), (cu, cv)))
            st.insert((cu, cv))
        (lu, lv), (hu_, hv_) = self.bbox
        segs += [((lu, lv), (hu_, lv)), ((hu_, lv), (hu_, hv_)),
                 ((hu_, hv_), (lu, hv_)), ((lu, hv_), (lu, lv))]
        return segs

    def _labels(self, P):
        return first_dominating(P, self.corners)

    def _to_frame(self, q):
        return self.frame((self.w.apex[0] + q[0], self.w.apex[1] + q[1]))

    def query(self, q) -> Optional[PointPair]:
        i = self.sub.locate(q)
        return None if i < 0 else self.cands[int(i)].pair

    def stats(self) -> dict:
        loc = self.sub.locator
        return {"n": len(self.S), "candidates": len(self.cands),
                "overlay_vertices": self.audit.total, "max_step_vertices": self.audit.max_step,
                "segments": len(self.sub.segments), "trapezoids": loc.n_trapezoids}


def _bbox(P: np.ndarray, pad: float = 1.0):
    if len(P) == 0:
        return ((-1.0, -1.0), (1.0, 1.0))
    lo, hi = P.min(axis=0), P.max(axis=0)
    m = pad * max(float((hi - lo).max()), 1.0)
    return ((float(lo[0] - m), float(lo[1] - m)), (float(hi[0] + m), float(hi[1] + m)))


def build(S, w: Wedge, **kw) -> WedgeRcp:
    return WedgeRcp(S, w, **kw)


def query(st: WedgeRcp, q) -> Optional[PointPair]:
    return st.query(q)
