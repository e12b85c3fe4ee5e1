"""Range closest-pair queries for translates of a disc.

Query parameter ``q`` selects the disc ``d + q``; a point ``s`` lies in it iff
``q`` lies in the reflected disc at ``s``.  Two structures cooperate:

D1
    answers queries whose closest pair is short (at most ``tau``) from the
    short candidate pairs, by descending a length-ordered recursion tree whose
    nodes hold membership structures over lens unions;
D2
    answers the remaining queries, which see at most ``k`` points, from the
    at-most-k level of the arrangement of reflected discs.
"""
from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Optional, Protocol

import numpy as np
from scipy.spatial import cKDTree

from .candidates import CandidateSet, short_candidates
from .curves import Arc, circle_intersections
from .geometry import Disc, GeometryError, PointPair, reflect
from .oracle import closest_pair_brute
from .point_location import Locator

TWO_PI = 2 * math.pi
OVERFLOW = "overflow"
K_LEVEL = 16


class SmoothBodyOracle(Protocol):
    """What a convex body must offer to be served here; only discs are exact."""

    diameter: float

    def contains_array(self, pts, q=(0.0, 0.0), eps: float = 0.0): ...


class InvariantError(RuntimeError):
    pass


class CrossingPairsError(GeometryError):
    def __init__(self, first, second):
        super().__init__(f"short pairs cross: {first} and {second}")
        self.pairs = (first, second)


def compute_tau(d: Disc) -> float:
    """Longest chord whose endpoint normals differ by less than a right angle."""
    return math.sqrt(2.0) * d.radius * (1 - 1e-9)


def k_for(d: Disc, tau: float) -> int:
    c = math.ceil(d.diameter / tau)
    return 4 * c * c


@dataclass(frozen=True)
class Lens:
    """Parameters ``q`` whose disc holds both points of a pair."""

    A: tuple
    B: tuple
    R: float

    def contains(self, q) -> bool:
        return math.dist(q, self.A) <= self.R and math.dist(q, self.B) <= self.R

    @property
    def nonempty(self) -> bool:
        return math.dist(self.A, self.B) < 2 * self.R

    def arcs(self) -> tuple:
        pts = circle_intersections(self.A, self.R, self.B, self.R)
        if len(pts) < 2:
            raise GeometryError("lens has empty interior")
        left, right = pts
        return Arc(self.A, self.R, right, left), Arc(self.B, self.R, left, right)


class _Circles:
    """Reflected discs of ``S`` with an intersection cache shared by all
    structures, so arc endpoints coincide exactly."""

    def __init__(self, S, d: Disc):
        rd = reflect(d)
        self.R = d.radius
        self.C = np.asarray(S, dtype=float).reshape(-1, 2) + np.asarray(rd.center)
        self.tree = cKDTree(self.C) if len(self.C) else None
        self._cache = {}

    def center(self, i):
        return (float(self.C[i, 0]), float(self.C[i, 1]))

    def meet(self, i, j):
        key = (i, j) if i < j else (j, i)
        pts = self._cache.get(key)
        if pts is None:
            pts = tuple(circle_intersections(self.center(key[0]), self.R, self.center(key[1]), self.R))
            self._cache[key] = pts
        return pts

    def elementary_arcs(self, i, others):
        """Arcs of circle ``i`` between consecutive crossings with ``others``:
        ``(p, q, mid_angle)`` counterclockwise."""
        cx, cy = self.center(i)
        pts = {p for j in others if j != i for p in self.meet(i, j)}
        if not pts:
            return []
        pts = sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx) % TWO_PI)
        angs = [math.atan2(p[1] - cy, p[0] - cx) % TWO_PI for p in pts]
        out = []
        for k in range(len(pts)):
            a0 = angs[k]
            sweep = (angs[(k + 1) % len(pts)] - a0) % TWO_PI or TWO_PI
            out.append((pts[k], pts[(k + 1) % len(pts)], a0 + sweep / 2))
        return out

    def within(self, ids, i):
        """Members of ``ids`` whose circle can meet circle ``i``."""
        ci = self.C[i]
        return [j for j in ids if j != i and np.hypot(*(self.C[j] - ci)) < 2 * self.R]


def _merge_arcs(kept, R, centers):
    """Join consecutive kept arcs of one circle at points no other circle uses."""
    users = defaultdict(set)
    for i, arcs in kept.items():
        for p, q in arcs:
            users[p].add(i)
            users[q].add(i)
    out = []
    for i, arcs in kept.items():
        nxt = {p: q for p, q in arcs}
        starts = [p for p, _ in arcs if users[p] != {i} or p not in {q for _, q in arcs}]
        seen = set()
        for p in starts:
            q = nxt[p]
            seen.add(p)
            while users[q] == {i} and q in nxt and q not in seen:
                seen.add(q)
                q = nxt[q]
            out.append(Arc(centers[i], R, p, q))
        for p, q in arcs:  # closed loops made only of private breakpoints
            if p not in seen:
                seen.add(p)
                r = nxt[p]
                while r != p and r in nxt:
                    seen.add(r)
                    r = nxt[r]
                out.append(Arc(centers[i], R, p, p))
    return out


def _check_crossings(pairs, P):
    """Raise if two pairs, as segments, cross in their interiors."""
    if len(pairs) < 2:
        return
    a = P[[p.ia for p in pairs]]
    b = P[[p.ib for p in pairs]]

    def orient(p, q, r):
        return ((q[:, None, 0] - p[:, None, 0]) * (r[None, :, 1] - p[:, None, 1])
                - (q[:, None, 1] - p[:, None, 1]) * (r[None, :, 0] - p[:, None, 0]))

    o1, o2 = orient(a, b, a), orient(a, b, b)
    o3, o4 = orient(a, b, a).T, orient(a, b, b).T
    ids_a = np.array([p.ia for p in pairs])
    ids_b = np.array([p.ib for p in pairs])
    share = ((ids_a[:, None] == ids_a[None, :]) | (ids_a[:, None] == ids_b[None, :])
             | (ids_b[:, None] == ids_a[None, :]) | (ids_b[:, None] == ids_b[None, :]))
    # segment j's endpoints straddle line i, and vice versa
    s1 = o1 * o2 < 0
    s2 = o3 * o4 < 0
    hit = s1 & s2 & ~share
    np.fill_diagonal(hit, False)
    if hit.any():
        i, j = map(int, np.argwhere(hit)[0])
        raise CrossingPairsError(pairs[i].pair, pairs[j].pair)


class MembershipStructure:
    """Does the query disc contain some pair of ``pairs``?  Point location
    over the boundary of the union of their lenses."""

    def __init__(self, pairs, circles: _Circles, seed: int = 0, check: bool = True):
        self.pairs = list(pairs)
        self.circles = circles
        R = circles.R
        if check:
            _check_crossings(self.pairs, circles.C)
        ia = np.array([p.ia for p in self.pairs])
        ib = np.array([p.ib for p in self.pairs])
        self.ia, self.ib = ia, ib
        involved = sorted(set(ia.tolist()) | set(ib.tolist()))
        partners = defaultdict(list)
        for x, y in zip(ia, ib):
            partners[int(x)].append(int(y))
            partners[int(y)].append(int(x))
        rows, owners = [], []
        for i in involved:
            for p, q, mid in circles.elementary_arcs(i, circles.within(involved, i)):
                rows.append((p, q, mid))
                owners.append(i)
        kept = defaultdict(list)
        if rows:
            cx = circles.C[owners]
            mids = np.array([[c[0] + R * math.cos(m), c[1] + R * math.sin(m)]
                             for c, (_, _, m) in zip(cx, rows)])
            col = {c: k for k, c in enumerate(involved)}
            Cin = circles.C[involved]
            inside = np.hypot(mids[:, None, 0] - Cin[None, :, 0], mids[:, None, 1] - Cin[None, :, 1]) < R
            inside[np.arange(len(rows)), [col[o] for o in owners]] = False
            la = np.array([col[int(x)] for x in ia])
            lb = np.array([col[int(x)] for x in ib])
            in_lens = (inside[:, la] & inside[:, lb]).any(axis=1)
            for r, (p, q, _) in enumerate(rows):
                o = owners[r]
                if in_lens[r] or not inside[r, [col[b] for b in partners[o]]].any():
                    continue
                kept[o].append((p, q))
        centers = {i: circles.center(i) for i in kept}
        self.arcs = _merge_arcs(kept, R, centers)
        self.vertices = {a.p for a in self.arcs if a.p != a.q} | {a.q for a in self.arcs if a.p != a.q}
        lo = circles.C[involved].min(axis=0) - 2 * R if involved else np.zeros(2) - 1
        hi = circles.C[involved].max(axis=0) + 2 * R if involved else np.zeros(2) + 1
        self.locator = Locator(self.arcs, self._label, bbox=(tuple(lo), tuple(hi)),
                               outside=False, seed=seed)

    def _label(self, P):
        return self.scan(P).tolist()

    def scan(self, P) -> np.ndarray:
        """Lens-scan oracle: which rows of ``P`` lie in some lens."""
        P = np.asarray(P, dtype=float).reshape(-1, 2)
        C, R = self.circles.C, self.circles.R
        out = np.zeros(len(P), dtype=bool)
        for s in range(0, len(P), 2048):
            X = P[s: s + 2048]
            da = np.hypot(X[:, None, 0] - C[self.ia][None, :, 0], X[:, None, 1] - C[self.ia][None, :, 1])
            db = np.hypot(X[:, None, 0] - C[self.ib][None, :, 0], X[:, None, 1] - C[self.ib][None, :, 1])
            out[s: s + 2048] = ((da <= R) & (db <= R)).any(axis=1)
        return out

    def contains(self, q) -> bool:
        return bool(self.locator.locate(q))

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_fragments(self) -> int:
        return self.locator.n_pieces


class _Node:
    __slots__ = ("pair", "member", "left", "right", "size")

    def __init__(self):
        self.pair = self.member = self.left = self.right = None
        self.size = 0


class D1Structure:
    """Recursion tree over the short candidates sorted by length."""

    def __init__(self, cands: CandidateSet, circles: _Circles, seed: int = 0):
        self.cands = cands
        self.circles = circles
        self.seed = seed
        self.members = []
        _check_crossings(list(cands), circles.C)
        self.root = self._build(list(cands)) if len(cands) else None

    def _build(self, pairs):
        node = _Node()
        node.size = len(pairs)
        if len(pairs) == 1:
            node.pair = pairs[0]
            return node
        half = (len(pairs) + 1) // 2
        node.member = MembershipStructure(pairs[:half], self.circles, self.seed, check=False)
        self.members.append(node.member)
        node.left = self._build(pairs[:half])
        node.right = self._build(pairs[half:])
        return node

    def query(self, q) -> Optional[PointPair]:
        node = self.root
        while node is not None and node.pair is None:
            node = node.left if node.member.contains(q) else node.right
        if node is None:
            return None
        p = node.pair
        lens = Lens(self.circles.center(p.ia), self.circles.center(p.ib), self.circles.R)
        return p.pair if lens.contains(q) else None

    def depth(self) -> int:
        def dep(n):
            return 0 if n is None or n.pair is not None else 1 + max(dep(n.left), dep(n.right))
        return dep(self.root)

    @property
    def member_sizes(self) -> list:
        return [len(m.pairs) for m in self.members]

    @property
    def n_fragments(self) -> int:
        return sum(m.n_fragments for m in self.members)


class D2Structure:
    """At-most-k level of the arrangement of reflected discs; trapezoids carry
    the indices of the discs containing them, or ``OVERFLOW``."""

    def __init__(self, circles: _Circles, k: int = K_LEVEL, seed: int = 0):
        self.circles = circles
        self.k = k
        C, R = circles.C, circles.R
        n = len(C)
        rows, owners = [], []
        for i in range(n):
            nb = circles.tree.query_ball_point(C[i], 2 * R)
            for p, q, mid in circles.elementary_arcs(i, nb):
                rows.append((p, q))
                owners.append(i)
        self.total_arcs = len(rows)
        arcs = []
        if rows:
            mids = np.array([[C[o, 0] + R * math.cos(m), C[o, 1] + R * math.sin(m)]
                             for o, m in zip(owners, self._mid_angles(rows, owners))])
            depth = circles.tree.query_ball_point(mids, R, return_length=True)
            own = np.hypot(*(mids - C[owners]).T) <= R
            depth = depth - own
            for r, (p, q) in enumerate(rows):
                if depth[r] <= k:
                    arcs.append(Arc(circles.center(owners[r]), R, p, q))
        # isolated circles have no crossings and are always kept
        deg = np.zeros(n, dtype=int)
        for o in owners:
            deg[o] += 1
        for i in np.flatnonzero(deg == 0):
            c = circles.center(int(i))
            top = (c[0], c[1] + R)
            arcs.append(Arc(c, R, top, top))
        self.arcs = arcs
        self.vertices = {a.p for a in arcs if a.p != a.q} | {a.q for a in arcs if a.p != a.q}
        lo = C.min(axis=0) - 2 * R if n else np.zeros(2) - 1
        hi = C.max(axis=0) + 2 * R if n else np.zeros(2) + 1
        self.bbox = (tuple(map(float, lo)), tuple(map(float, hi)))
        self.locator = Locator(arcs, self._label, bbox=self.bbox, outside=(), seed=seed)
        self.depths = Counter(len(t.label) if t.label != OVERFLOW else k + 1
                              for t in self.locator.traps)

    def _mid_angles(self, rows, owners):
        C = self.circles.C
        out = []
        for (p, q), o in zip(rows, owners):
            a0 = math.atan2(p[1] - C[o, 1], p[0] - C[o, 0])
            a1 = math.atan2(q[1] - C[o, 1], q[0] - C[o, 0])
            sweep = (a1 - a0) % TWO_PI or TWO_PI
            out.append(a0 + sweep / 2)
        return out

    def _label(self, P):
        if self.circles.tree is None:
            return [() for _ in range(len(P))]
        lists = self.circles.tree.query_ball_point(np.asarray(P), self.circles.R)
        return [OVERFLOW if len(L) > self.k else tuple(sorted(L)) for L in lists]

    def locate(self, q):
        return self.locator.locate(q)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)


class SmoothRcp:
    def __init__(self, S, d: Disc, k: int = K_LEVEL, seed: int = 0, cands: Optional[CandidateSet] = None,
                 cap: int = 2000):
        self.d = d
        self.S = np.asarray(S, dtype=float).reshape(-1, 2)
        self.tau = compute_tau(d)
        self.k = k
        self.circles = _Circles(self.S, d)
        self.cands = cands if cands is not None else short_candidates(self.S, d, self.tau, cap=cap)
        self.d1 = D1Structure(self.cands, self.circles, seed)
        self.d2 = D2Structure(self.circles, k, seed)
        self.paths = Counter()

    def query(self, q) -> Optional[PointPair]:
        q = (float(q[0]), float(q[1]))
        ans = self.d1.query(q)
        if ans is not None:
            self.paths["d1"] += 1
            return ans
        lab = self.d2.locate(q)
        if lab == OVERFLOW:
            raise InvariantError(f"query {q} reached a cell deeper than k={self.k} with no short pair")
        self.paths["d2"] += 1
        return closest_pair_brute(self.S[list(lab)]) if len(lab) >= 2 else None

    def stats(self) -> dict:
        return {"n": len(self.S), "R": self.d.radius, "tau": self.tau, "k": self.k,
                "short_candidates": len(self.cands), "d1_depth": self.d1.depth(),
                "d1_members": len(self.d1.members), "d1_fragments": self.d1.n_fragments,
                "d2_arcs_total": self.d2.total_arcs, "d2_arcs_kept": len(self.d2.arcs),
                "d2_vertices": self.d2.n_vertices, "d2_trapezoids": self.d2.locator.n_trapezoids,
                "d2_overflow_trapezoids": self.d2.depths.get(self.k + 1, 0),
                "d1_answers": self.paths["d1"], "d2_answers": self.paths["d2"]}


def build(S, d: Disc, **kw) -> SmoothRcp:
    return SmoothRcp(S, d, **kw)


def query(st: SmoothRcp, q) -> Optional[PointPair]:
    return st.query(q)
