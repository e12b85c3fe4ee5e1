"""Exact candidate-pair enumeration for translate query spaces.

A pair is a candidate when it is the closest pair inside at least one
translate of the base shape.  Three enumerators live here:

* threshold sweeps for wedges, co-wedges and halfplanes, which are exact
  because every range set is cut out by one or two coordinate thresholds in
  the shape's own affine frame;
* a generic arrangement sampler that evaluates the oracle once per cell of
  the arrangement of reflected translates (used for discs and as an
  independent cross-check of the sweeps).

Witnesses are translate parameters ``q``: the range is ``shape + q``.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
from scipy.spatial import cKDTree

from .curves import circle_intersections
from .geometry import (EPS, CoWedge, Disc, GeometryError, Halfplane, Point, PointPair,
                       Wedge, check_general_position, vector_angle,
                       wedge_to_quadrant_map)
from .oracle import RangePredicate, rcp_answer

FLAT, STEEP, UNCLASSIFIED = "flat", "steep", "unclassified"
SAMPLING_CAP = 400
WEDGE_CAP = 2000


@dataclass(frozen=True)
class CandidatePair:
    pair: PointPair
    index: int
    cls: str = UNCLASSIFIED
    witness: Point = (0.0, 0.0)
    ia: int = -1  # indices into the source point array, -1 when unknown
    ib: int = -1

    @property
    def a(self) -> Point:
        return self.pair.a

    @property
    def b(self) -> Point:
        return self.pair.b

    @property
    def length(self) -> float:
        return self.pair.length


@dataclass
class CandidateSet:
    pairs: list
    source: str
    shape: object = None
    points: Optional[np.ndarray] = field(default=None, repr=False)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __getitem__(self, i):
        return self.pairs[i]

    def lengths(self) -> np.ndarray:
        return np.array([c.length for c in self.pairs])

    def subset(self, keep: Iterable[CandidatePair], source: Optional[str] = None) -> "CandidateSet":
        return _finish(list(keep), source or self.source, self.shape, self.points)

    def invalid_witnesses(self, S=None) -> list:
        """Members that are not the oracle answer at their own witness."""
        S = self.points if S is None else S
        return [c for c in self.pairs
                if rcp_answer(S, RangePredicate(self.shape, c.witness)) != c.pair]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["index", "ax", "ay", "bx", "by", "length", "class", "witness_x", "witness_y"])
            for c in self.pairs:
                w.writerow([c.index, repr(c.a[0]), repr(c.a[1]), repr(c.b[0]), repr(c.b[1]),
                            repr(c.length), c.cls, repr(c.witness[0]), repr(c.witness[1])])

    @classmethod
    def from_csv(cls, path, source: str = "csv", shape=None) -> "CandidateSet":
        out = []
        with open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                pp = PointPair.of((float(row["ax"]), float(row["ay"])),
                                  (float(row["bx"]), float(row["by"])))
                out.append(CandidatePair(pp, int(row["index"]), row["class"],
                                         (float(row["witness_x"]), float(row["witness_y"]))))
        return _finish(out, source, shape, None)


def _finish(cands, source, shape, points) -> CandidateSet:
    cands = sorted(cands, key=lambda c: c.length)
    for k in range(1, len(cands)):
        if not cands[k - 1].length < cands[k].length:
            raise GeometryError("candidate lengths not distinct; input is degenerate")
    cands = [CandidatePair(c.pair, i, c.cls, c.witness, c.ia, c.ib) for i, c in enumerate(cands)]
    return CandidateSet(cands, source, shape, points)


# ---------------------------------------------------------------------------
# sweep kernel


def _distance_matrix(P: np.ndarray) -> np.ndarray:
    D = np.hypot(P[:, None, 0] - P[None, :, 0], P[:, None, 1] - P[None, :, 1])
    np.fill_diagonal(D, np.inf)
    return D


def _prefix_records(D: np.ndarray, order: np.ndarray, start: int):
    """Closest pairs of the prefixes ``order[:L]`` for ``L >= max(start, 2)``.

    Yields ``(i, j, L)`` with ``L`` the shortest such prefix whose closest
    pair is ``(i, j)``.
    """
    k = len(order)
    lo = max(start, 2)
    if k < lo:
        return []
    M = D[np.ix_(order, order)]
    M[np.triu_indices(k)] = np.inf
    arg = M.argmin(axis=1)
    rowmin = M[np.arange(k), arg]
    prev = np.concatenate(([np.inf], np.minimum.accumulate(rowmin)[:-1]))
    rec = np.flatnonzero(rowmin < prev)
    out = []
    before = rec[rec < lo - 1]
    if len(before):
        r = before[-1]
        out.append((order[r], order[arg[r]], lo))
    for r in rec[rec >= lo - 1]:
        out.append((order[r], order[arg[r]], r + 1))
    return out


def _between(sorted_keys: np.ndarray, L: int, pad: float) -> float:
    """A threshold strictly between ``sorted_keys[L-1]`` and ``sorted_keys[L]``."""
    if L <= 0:
        return sorted_keys[0] - pad if len(sorted_keys) else 0.0
    if L >= len(sorted_keys):
        return sorted_keys[-1] + pad
    return (sorted_keys[L - 1] + sorted_keys[L]) / 2


def _as_points(S) -> np.ndarray:
    S = np.asarray(S, dtype=float).reshape(-1, 2)
    check_general_position(S, collinear=False)
    return S


def _make(S, i, j, witness, cls=UNCLASSIFIED) -> CandidatePair:
    i, j = int(i), int(j)
    pp = PointPair.of(S[i], S[j])
    if tuple(S[i]) != pp.a:
        i, j = j, i
    return CandidatePair(pp, -1, cls, (float(witness[0]), float(witness[1])), i, j)


# ---------------------------------------------------------------------------
# wedges


def wedge_candidates(S, w: Wedge, cap: int = WEDGE_CAP, classify_pairs: bool = True) -> CandidateSet:
    S = _as_points(S)
    if len(S) > cap:
        raise GeometryError(f"wedge enumeration capped at {cap} points")
    f = wedge_to_quadrant_map(w)
    uv = f.apply_array(S) if len(S) else np.zeros((0, 2))
    D = _distance_matrix(S)
    by_u = np.argsort(-uv[:, 0], kind="stable")
    found = {}
    for t in range(len(S)):
        T = by_u[: t + 1]
        order = T[np.argsort(-uv[T, 1], kind="stable")]
        for i, j, _ in _prefix_records(D, order, 2):
            key = (min(i, j), max(i, j))
            if key not in found:
                found[key] = None
    out = []
    for i, j in found:
        apex = _smallest_apex(f, uv[[i, j]])
        q = (apex[0] - w.apex[0], apex[1] - w.apex[1])
        c = _make(S, i, j, q)
        if classify_pairs:
            c = CandidatePair(c.pair, -1, classify(w, c), c.witness, c.ia, c.ib)
        out.append(c)
    return _finish(out, "wedge", w, S)


def _smallest_apex(f, uv) -> Point:
    corner = uv.min(axis=0)
    apex = f.inverse()((float(corner[0]), float(corner[1])))
    return (float(apex[0]), float(apex[1]))


def classify(w: Wedge, p: CandidatePair, eps: float = 1e-9) -> str:
    """Steep iff the apex of the smallest translate differs from both points
    and the apex angle is strictly the smallest angle of the triangle."""
    apex = (w.apex[0] + p.witness[0], w.apex[1] + p.witness[1])
    a, b = p.a, p.b
    scale = max(p.length, 1e-300)
    if math.dist(apex, a) <= eps * scale or math.dist(apex, b) <= eps * scale:
        return FLAT
    at_p = vector_angle((a[0] - apex[0], a[1] - apex[1]), (b[0] - apex[0], b[1] - apex[1]))
    at_a = vector_angle((apex[0] - a[0], apex[1] - a[1]), (b[0] - a[0], b[1] - a[1]))
    at_b = vector_angle((apex[0] - b[0], apex[1] - b[1]), (a[0] - b[0], a[1] - b[1]))
    return STEEP if at_p < min(at_a, at_b) - eps else FLAT


# ---------------------------------------------------------------------------
# co-wedges and halfplanes


def _cowedge_frame(c: CoWedge):
    return wedge_to_quadrant_map(c.complement())


def cowedge_candidates(S, c: CoWedge) -> CandidateSet:
    """Every range set is ``{u <= Q1} | {v <= Q2}`` in the frame of the
    complementary wedge; sweep ``Q1`` over the u-order and grow ``Q2``."""
    S = _as_points(S)
    n = len(S)
    f = _cowedge_frame(c)
    uv = f.apply_array(S) if n else np.zeros((0, 2))
    D = _distance_matrix(S)
    pad = 1.0 + (float(np.ptp(uv)) if n else 0.0)
    by_u = np.argsort(uv[:, 0], kind="stable")
    us = uv[by_u, 0]
    found = {}
    best = (np.inf, -1, -1)  # closest pair of the base
    for t in range(n + 1):  # base = the t smallest u
        if t >= 2:
            x = by_u[t - 1]
            row = D[x, by_u[: t - 1]]
            k = int(row.argmin())
            if row[k] < best[0]:
                best = (row[k], x, by_u[k])
        base, rest = by_u[:t], by_u[t:]
        rest = rest[np.argsort(uv[rest, 1], kind="stable")]
        vs = uv[rest, 1]
        Q1 = _between(us, t, pad)
        recs = []
        if t >= 2:
            recs.append((best[1], best[2], t))
        if len(rest):
            cols = np.concatenate([base, rest])
            M = D[np.ix_(rest, cols)]
            m = len(rest)
            M[:, t:][np.triu_indices(m)] = np.inf
            arg = M.argmin(axis=1)
            rowmin = M[np.arange(m), arg]
            prev = np.minimum.accumulate(np.concatenate(([best[0]], rowmin)))[:-1]
            for r in np.flatnonzero(rowmin < prev):
                recs.append((rest[r], cols[arg[r]], t + r + 1))
        for i, j, L in recs:
            if t + (L - t) < 2:
                continue
            key = (min(i, j), max(i, j))
            if key not in found:
                found[key] = (Q1, _between(vs, L - t, pad))
    out = []
    for (i, j), Q in found.items():
        apex = f.inverse()(Q)
        out.append(_make(S, i, j, (apex[0] - c.apex[0], apex[1] - c.apex[1])))
    return _finish(out, "cowedge", c, S)


def halfplane_candidates(S, h: Halfplane) -> CandidateSet:
    """Translates of a fixed halfplane cut ``S`` by prefixes of the order
    along its inner normal."""
    S = _as_points(S)
    nrm = (-h.direction[1], h.direction[0])
    key = S @ np.asarray(nrm) - (nrm[0] * h.origin[0] + nrm[1] * h.origin[1])
    order = np.argsort(-key, kind="stable")
    ks = -key[order]
    pad = 1.0 + (float(np.ptp(key)) if len(S) else 0.0)
    out = []
    for i, j, L in _prefix_records(_distance_matrix(S), order, 2):
        t = -_between(ks, L, pad)
        out.append(_make(S, i, j, (t * nrm[0], t * nrm[1])))
    return _finish(out, "halfplane", h, S)


def branch_halfplanes(c: CoWedge) -> tuple[Halfplane, Halfplane]:
    """The two halfplanes whose union is ``c``."""
    return (Halfplane(c.apex, c.dir1), Halfplane(c.apex, (-c.dir2[0], -c.dir2[1])))


def phi_star(cands: CandidateSet) -> CandidateSet:
    """Co-wedge candidates that are not candidates of either branch halfplane."""
    c = cands.shape
    S = cands.points
    drop = set()
    for h in branch_halfplanes(c):
        drop |= {hp.pair for hp in halfplane_candidates(S, h)}
    return cands.subset([p for p in cands if p.pair not in drop], "phi_star")


def r_points(c: CoWedge, p: CandidatePair) -> tuple[Point, Point]:
    """``(r, r')``: the points on the ``dir1`` and ``dir2`` branches of the
    smallest co-wedge translate having both points on its boundary."""
    f = _cowedge_frame(c)
    ua, ub = f(p.a), f(p.b)
    if ua[0] < ub[0] and ua[1] > ub[1]:
        return p.a, p.b
    if ub[0] < ua[0] and ub[1] > ua[1]:
        return p.b, p.a
    raise GeometryError(f"pair {p.pair} is not split by the two branches")


def sector_of(v: Point) -> int:
    ang = math.atan2(v[1], v[0]) % (2 * math.pi)
    return min(int(ang // (math.pi / 4)), 7) + 1


def split_by_sector(star: CandidateSet) -> dict:
    """Sectors 1..8 of the plane by the direction ``r -> r'``."""
    out = {k: [] for k in range(1, 9)}
    for p in star:
        r, r2 = r_points(star.shape, p)
        out[sector_of((r2[0] - r[0], r2[1] - r[1]))].append(p)
    return out


# ---------------------------------------------------------------------------
# arrangement sampling


def _rays(shape):
    """Boundary rays ``(origin, direction)`` of the reflected shape at the origin."""
    a = (-shape.apex[0], -shape.apex[1])
    return a, [(-shape.dir1[0], -shape.dir1[1]), (-shape.dir2[0], -shape.dir2[1])]


def _min_spacing(V: np.ndarray) -> float:
    if len(V) < 2:
        return math.inf
    d, _ = cKDTree(V).query(V, k=2)
    pos = d[:, 1][d[:, 1] > 0]
    return float(pos.min()) if len(pos) else math.inf


def _ray_samples(S: np.ndarray, shape, eps_rel: float):
    a, dirs = _rays(shape)
    apexes = S + a
    e1, e2 = np.asarray(dirs[0]), np.asarray(dirs[1])
    n = len(S)
    # ray i along e1 from apex_i meets ray j along e2 from apex_j
    A = np.array([e1, -e2]).T
    Ainv = np.linalg.inv(A)
    diff = apexes[None, :, :] - apexes[:, None, :]  # apex_j - apex_i
    ts = diff @ Ainv.T  # (n, n, 2): (t_i, t_j)
    ok = (ts[..., 0] > 0) & (ts[..., 1] > 0)
    np.fill_diagonal(ok, False)
    ii, _ = np.nonzero(ok)
    V = apexes[ii] + ts[ok][:, :1] * e1
    allv = np.vstack([V, apexes]) if len(V) else apexes
    span = float(np.ptp(allv)) if len(allv) else 1.0
    eps = min(eps_rel * _min_spacing(allv), 1e-6 * max(span, 1.0))
    b1, b2 = e1 + e2, e1 - e2
    b1, b2 = b1 / np.linalg.norm(b1), b2 / np.linalg.norm(b2)
    out = [V + s * eps * b for b in (b1, b2) for s in (1, -1)] if len(V) else []
    out += [apexes + s * eps * b1 for s in (1, -1)]
    far = 10 * (span + 1.0)
    ctr = apexes.mean(axis=0) if n else np.zeros(2)
    out.append(np.array([ctr + far * d for d in (e1, e2, b1, -b1, -e1, -e2)]))
    return np.vstack(out)


def _disc_samples(S: np.ndarray, d: Disc, eps_rel: float):
    R = d.radius
    C = S - np.asarray(d.center)
    tree = cKDTree(C)
    pairs = tree.query_pairs(2 * R, output_type="ndarray")
    V, T, own = [], [], []
    for i, j in pairs:
        for v in circle_intersections(tuple(C[i]), R, tuple(C[j]), R):
            V.append(v)
            T.append(((-(v[1] - C[i][1]), v[0] - C[i][0]), (-(v[1] - C[j][1]), v[0] - C[j][0])))
            own.append((i, j))
    V = np.asarray(V, dtype=float).reshape(-1, 2)
    out = []
    if len(V):
        # per-vertex step: a fraction of the distance to the nearest other
        # vertex and to the nearest circle not through the vertex
        near_v, _ = cKDTree(V).query(V, k=2) if len(V) > 1 else (np.full((1, 2), np.inf), None)
        step = np.minimum(near_v[:, 1], R)
        for k, nb in enumerate(tree.query_ball_point(V, 2 * R)):
            nb = [c for c in nb if c not in own[k]]
            if nb:
                gap = np.abs(np.hypot(*(C[nb] - V[k]).T) - R).min()
                step[k] = min(step[k], gap)
        eps = np.maximum(0.25 * step, eps_rel * 1e-8 * R)[:, None]
        T = np.asarray(T, dtype=float)
        t1 = T[:, 0] / np.linalg.norm(T[:, 0], axis=1)[:, None]
        t2 = T[:, 1] / np.linalg.norm(T[:, 1], axis=1)[:, None]
        for b in (t1 + t2, t1 - t2):
            b = b / np.maximum(np.linalg.norm(b, axis=1), 1e-300)[:, None]
            out += [V + eps * b, V - eps * b]
    eps0 = eps_rel * R
    out += [C, C + np.array([R + eps0, 0.0]), C + np.array([R - eps0, 0.0])]
    far = C.mean(axis=0) + 10 * (float(np.ptp(C)) + R + 1.0) if len(C) else np.zeros(2)
    out.append(np.asarray([far]))
    return np.vstack(out)


def _membership(shape, S: np.ndarray, Q: np.ndarray):
    """``(len(Q), len(S))`` mask of ``S`` inside ``shape + q`` and, per sample,
    a lower bound on its distance to every boundary through a point of ``S``."""
    if isinstance(shape, Disc):
        c = Q + np.asarray(shape.center)
        dist = np.hypot(S[None, :, 0] - c[:, None, 0], S[None, :, 1] - c[:, None, 1])
        return dist <= shape.radius, np.abs(dist - shape.radius).min(axis=1)
    a = Q + np.asarray(shape.apex)
    vx = S[None, :, 0] - a[:, None, 0]
    vy = S[None, :, 1] - a[:, None, 1]
    c1 = shape.dir1[0] * vy - shape.dir1[1] * vx
    c2 = vx * shape.dir2[1] - vy * shape.dir2[0]
    clear = np.minimum(np.abs(c1), np.abs(c2)).min(axis=1)
    if isinstance(shape, Wedge):
        return (c1 >= 0) & (c2 >= 0), clear
    return (c1 >= 0) | (c2 >= 0), clear


def arrangement_sample_candidates(S, shape, cap: int = SAMPLING_CAP, max_len: float = math.inf,
                                  eps_rel: float = 1e-4, chunk: int = 2048) -> CandidateSet:
    """Oracle evaluated at one interior sample per arrangement cell of the
    reflected translates; only candidates of length ``<= max_len`` are kept."""
    if isinstance(shape, Halfplane):
        out = halfplane_candidates(S, shape)
        return out.subset([c for c in out if c.length <= max_len])
    S = _as_points(S)
    n = len(S)
    if n > cap:
        raise GeometryError(f"arrangement sampling capped at {cap} points")
    if isinstance(shape, Disc):
        Q = _disc_samples(S, shape, eps_rel) if n else np.zeros((0, 2))
        max_len = min(max_len, 2 * shape.radius * (1 + EPS))
    elif isinstance(shape, (Wedge, CoWedge)):
        Q = _ray_samples(S, shape, eps_rel) if n else np.zeros((0, 2))
    else:
        raise TypeError(f"unsupported shape {type(shape).__name__}")
    if n >= 2:
        if math.isfinite(max_len):
            prs = cKDTree(S).query_pairs(max_len, output_type="ndarray").reshape(-1, 2)
            pi, pj = prs[:, 0], prs[:, 1]
        else:
            pi, pj = np.triu_indices(n, 1)
        lens = np.hypot(*(S[pi] - S[pj]).T)
        o = np.argsort(lens, kind="stable")
        pi, pj = pi[o], pj[o]
    found = {}
    if n >= 2 and len(pi):
        for s in range(0, len(Q), chunk):
            q = Q[s: s + chunk]
            M, clear = _membership(shape, S, q)
            both = M[:, pi] & M[:, pj]
            has = both.any(axis=1)
            first = both.argmax(axis=1)
            for r in np.flatnonzero(has):
                k = int(first[r])
                if k not in found or clear[r] > found[k][0]:
                    found[k] = (clear[r], q[r])
    out = [_make(S, pi[k], pj[k], w) for k, (_, w) in found.items()]
    return _finish(out, f"sampled-{type(shape).__name__.lower()}", shape, S)


def short_candidates(S, d: Disc, tau: float, cap: int = SAMPLING_CAP) -> CandidateSet:
    if not tau > 0:
        raise GeometryError("tau must be positive")
    return arrangement_sample_candidates(S, d, cap=cap, max_len=tau)
