"""Structural checks on candidate sets, shared by tests and scripts."""
from __future__ import annotations

import math
from collections import defaultdict, deque

import numpy as np

from .candidates import STEEP, r_points, split_by_sector
from .curves import circle_intersections
from .geometry import segments_cross, vector_angle


def steep_angle_violations(cands, theta: float, eps: float = 1e-9) -> list:
    """Pairs of steep candidates sharing a point at an angle below ``theta``."""
    by_point = defaultdict(list)
    for c in cands:
        if c.cls == STEEP:
            by_point[c.a].append(c)
            by_point[c.b].append(c)
    bad = []
    for p, cs in by_point.items():
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                u = cs[i].b if cs[i].a == p else cs[i].a
                v = cs[j].b if cs[j].a == p else cs[j].a
                ang = vector_angle((u[0] - p[0], u[1] - p[1]), (v[0] - p[0], v[1] - p[1]))
                if ang < theta - eps:
                    bad.append((cs[i].pair, cs[j].pair, ang))
    return bad


def crossing_pairs(pairs) -> list:
    """All pairs of segments crossing in their interiors (box-pruned scan)."""
    pairs = list(pairs)
    if len(pairs) < 2:
        return []
    A = np.array([[p.a[0], p.a[1], p.b[0], p.b[1]] for p in pairs])
    lo = np.minimum(A[:, :2], A[:, 2:])
    hi = np.maximum(A[:, :2], A[:, 2:])
    out = []
    for i in range(len(pairs)):
        near = np.flatnonzero((lo[i + 1:] <= hi[i]).all(1) & (hi[i + 1:] >= lo[i]).all(1)) + i + 1
        for j in near:
            if segments_cross((pairs[i].a, pairs[i].b), (pairs[j].a, pairs[j].b)):
                out.append((pairs[i].pair, pairs[int(j)].pair))
    return out


def rpoint_coloring(star):
    """Colour each point by its role (r or r') over ``star``; returns the
    conflicting points, empty when the labelling is a proper 2-colouring."""
    color, bad = {}, set()
    for c in star:
        r, r2 = r_points(star.shape, c)
        for p, col in ((r, 0), (r2, 1)):
            if color.setdefault(p, col) != col:
                bad.add(p)
    return bad


def is_bipartite(pairs) -> bool:
    adj = defaultdict(list)
    for c in pairs:
        adj[c.a].append(c.b)
        adj[c.b].append(c.a)
    side = {}
    for s in adj:
        if s in side:
            continue
        side[s] = 0
        todo = deque([s])
        while todo:
            u = todo.popleft()
            for v in adj[u]:
                if v not in side:
                    side[v] = 1 - side[u]
                    todo.append(v)
                elif side[v] == side[u]:
                    return False
    return True


def is_forest(pairs) -> bool:
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for c in pairs:
        ra, rb = find(c.a), find(c.b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def sector_cycles(star) -> list:
    """Sectors whose pairs contain a cycle."""
    return [k for k, ps in split_by_sector(star).items() if not is_forest(ps)]


def lens_boundary_runs(L1, L2, tol: float = 1e-9) -> int:
    """Number of connected pieces of the boundary of ``L1`` inside ``L2``.

    The boundary is cut wherever it meets a circle of ``L2``; each piece is
    then wholly in or out, decided at its midpoint."""
    flags = []
    circles = {(L2.A, L2.R), (L2.B, L2.R)}
    for arc in L1.arcs():
        cuts = [math.atan2(p[1] - arc.center[1], p[0] - arc.center[0])
                for c, r in circles if c != arc.center
                for p in circle_intersections(arc.center, arc.radius, c, r)]
        offs = sorted({(a - arc.start) % (2 * math.pi) for a in cuts})
        offs = [0.0] + [o for o in offs if 0 < o < arc.sweep] + [arc.sweep]
        for o0, o1 in zip(offs, offs[1:]):
            m = arc.point_at(arc.start + (o0 + o1) / 2)
            flags.append(math.dist(m, L2.A) <= L2.R + tol and math.dist(m, L2.B) <= L2.R + tol)
    if all(flags):
        return 1
    k = flags.index(False)
    flags = flags[k:] + flags[:k]  # start outside so runs do not wrap
    return sum(1 for x, y in zip([False] + flags, flags) if y and not x)
