"""Range closest-pair queries for translates of a polygon with holes.

Points are hashed into quad-cells (2x2 blocks of a grid of width delta/4,
where delta is the least distance between non-adjacent boundary edges).
Inside a quad-cell every translate looks like the wedge or co-wedge of a
single vertex, so each quad-cell carries one wedge or co-wedge structure per
vertex.  If the best quad-cell answer is shorter than delta/4 it is the
answer; otherwise the range holds O(1) points and is reported and scanned.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .candidates import cowedge_candidates, wedge_candidates
from .cowedge_rcp import CoWedgeRcp
from .geometry import (PointPair, PolygonWithHoles, Wedge,
                       min_nonadjacent_edge_distance, vertex_wedges)
from .oracle import closest_pair_brute
from .reporting import ReportingGrid
from .wedge_rcp import WedgeRcp

SMALL_SET = 8


class _ScanRcp:
    """Candidate list scanned in length order; used when the point set is tiny."""

    def __init__(self, cands, W):
        self.cands = cands
        self.W = W
        self.ends = np.array([[c.a, c.b] for c in cands]).reshape(-1, 2)

    def query(self, q) -> Optional[PointPair]:
        if not len(self.cands):
            return None
        inside = self.W.contains_array(self.ends, q).reshape(-1, 2).all(axis=1)
        k = int(np.argmax(inside))
        return self.cands[k].pair if inside[k] else None


def _substructure(P, W, seed):
    if isinstance(W, Wedge):
        cands = wedge_candidates(P, W, classify_pairs=False)
        return _ScanRcp(cands, W) if len(P) <= SMALL_SET else WedgeRcp(P, W, cands, seed=seed)
    cands = cowedge_candidates(P, W)
    return _ScanRcp(cands, W) if len(P) <= SMALL_SET else CoWedgeRcp(P, W, cands, seed=seed)


@dataclass
class QuadCell:
    key: tuple
    idx: np.ndarray
    best: Optional[PointPair] = None
    subs: list = field(default_factory=list)


class PolygonRcp:
    def __init__(self, S, poly: PolygonWithHoles, seed: int = 0):
        self.poly = poly
        self.S = np.asarray(S, dtype=float).reshape(-1, 2)
        self.delta = min_nonadjacent_edge_distance(poly)
        self.g = self.delta / 4
        self.wedges = vertex_wedges(poly)
        self.alpha = poly.diameter
        self.grid = ReportingGrid(self.S, poly, self.delta)
        self.quad = {}
        self.branches = Counter()
        self.max_fallback = 0
        cells = np.floor(self.S / self.g).astype(np.int64)
        members = {}
        for i, (cx, cy) in enumerate(cells):
            for dx in (0, 1):
                for dy in (0, 1):
                    members.setdefault((int(cx) - dx, int(cy) - dy), []).append(i)
        for key, idx in members.items():
            idx = np.asarray(idx)
            qc = QuadCell(key, idx)
            if len(idx) >= 2:
                P = self.S[idx]
                qc.best = closest_pair_brute(P)
                qc.subs = [_substructure(P, W, seed) for _, W in self.wedges]
            self.quad[key] = qc

    @property
    def fallback_bound(self) -> int:
        return 4 * math.ceil(self.alpha / (self.delta / 4)) ** 2

    def quadcell_box(self, key):
        return ((key[0] * self.g, key[1] * self.g), ((key[0] + 2) * self.g, (key[1] + 2) * self.g))

    def classify_quadcell(self, key, q):
        """``("out",)``, ``("in",)`` or ``("vertex", v)``."""
        return self.grid.classify(self.quadcell_box(key), q)

    def quadcells_meeting(self, q) -> list:
        """Nonempty quad-cells meeting ``poly + q``, with their classification."""
        (x0, y0), (x1, y1) = self.poly.bbox()
        i0 = int(math.floor((x0 + q[0]) / self.g)) - 1
        j0 = int(math.floor((y0 + q[1]) / self.g)) - 1
        i1 = int(math.floor((x1 + q[0]) / self.g))
        j1 = int(math.floor((y1 + q[1]) / self.g))
        out = []
        if (i1 - i0 + 1) * (j1 - j0 + 1) <= len(self.quad):
            keys = ((i, j) for i in range(i0, i1 + 1) for j in range(j0, j1 + 1) if (i, j) in self.quad)
        else:
            keys = (k for k in self.quad if i0 <= k[0] <= i1 and j0 <= k[1] <= j1)
        for key in keys:
            kind = self.classify_quadcell(key, q)
            if kind[0] != "out":
                out.append((key, kind))
        return out

    def query(self, q) -> Optional[PointPair]:
        q = (float(q[0]), float(q[1]))
        best = None
        for key, kind in self.quadcells_meeting(q):
            qc = self.quad[key]
            if qc.best is None:
                continue
            phi = qc.best if kind[0] == "in" else qc.subs[kind[1]].query(q)
            if phi is not None and (best is None or phi.length < best.length):
                best = phi
        if best is not None and best.length < self.delta / 4:
            self.branches["quadcell"] += 1
            return best
        self.branches["fallback"] += 1
        idx = self.grid.report(q)
        self.max_fallback = max(self.max_fallback, len(idx))
        return closest_pair_brute(self.S[idx])

    def stats(self) -> dict:
        subs = [s for qc in self.quad.values() for s in qc.subs]
        return {"n": len(self.S), "delta": self.delta, "quadcells": len(self.quad),
                "quadcell_points": int(sum(len(qc.idx) for qc in self.quad.values())),
                "substructures": len(subs),
                "scan_substructures": sum(isinstance(s, _ScanRcp) for s in subs),
                "substructure_candidates": int(sum(len(s.cands) for s in subs)),
                "reporting_points": self.grid.stored_points,
                "quadcell_answers": self.branches["quadcell"],
                "fallback_answers": self.branches["fallback"],
                "max_fallback_size": self.max_fallback}


def build(S, poly: PolygonWithHoles, **kw) -> PolygonRcp:
    return PolygonRcp(S, poly, **kw)


def query(st: PolygonRcp, q) -> Optional[PointPair]:
    return st.query(q)
