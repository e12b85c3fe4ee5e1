"""Labelled planar subdivisions built from overlay edges.

Overlays of wedge and co-wedge translates are axis-parallel once mapped to
the quadrant frame.  Edges meet only at shared endpoints or T-junctions whose
coordinates are copied from existing corners, so exact float equality is
enough to find the junctions.
"""
from __future__ import annotations

import bisect
from collections import defaultdict

import numpy as np

from .curves import Segment
from .point_location import Locator


def _merge(intervals):
    out = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1]:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return out


def planarize_axis_segments(segs) -> list[Segment]:
    """Merge collinear overlaps and split at T-junctions.

    ``segs`` are ``((x0, y0), (x1, y1))`` with either ``x0 == x1`` or
    ``y0 == y1``; zero-length input is dropped.
    """
    horiz, vert = defaultdict(list), defaultdict(list)
    by_y, by_x = defaultdict(set), defaultdict(set)
    for (x0, y0), (x1, y1) in segs:
        for x, y in ((x0, y0), (x1, y1)):
            by_y[y].add(x)
            by_x[x].add(y)
        if y0 == y1 and x0 != x1:
            horiz[y0].append((min(x0, x1), max(x0, x1)))
        elif x0 == x1 and y0 != y1:
            vert[x0].append((min(y0, y1), max(y0, y1)))
        elif (x0, y0) != (x1, y1):
            raise ValueError("segment is not axis-parallel")
    horiz = {y: _merge(v) for y, v in horiz.items()}
    vert = {x: _merge(v) for x, v in vert.items()}
    for y, ivs in horiz.items():
        for lo, hi in ivs:
            by_y[y] |= {lo, hi}
            by_x[lo].add(y)
            by_x[hi].add(y)
    for x, ivs in vert.items():
        for lo, hi in ivs:
            by_x[x] |= {lo, hi}
            by_y[lo].add(x)
            by_y[hi].add(x)
    by_y = {k: sorted(v) for k, v in by_y.items()}
    by_x = {k: sorted(v) for k, v in by_x.items()}
    out = []
    for y, ivs in horiz.items():
        xs = by_y[y]
        for lo, hi in ivs:
            cut = xs[bisect.bisect_left(xs, lo): bisect.bisect_right(xs, hi)]
            out += [Segment((a, y), (b, y)) for a, b in zip(cut, cut[1:])]
    for x, ivs in vert.items():
        ys = by_x[x]
        for lo, hi in ivs:
            cut = ys[bisect.bisect_left(ys, lo): bisect.bisect_right(ys, hi)]
            out += [Segment((x, a), (x, b)) for a, b in zip(cut, cut[1:])]
    return out


class IndexedSubdivision:
    """Segments in a working frame, faces labelled by ``label_fn`` in that frame.

    ``to_frame`` maps original-space query points into the working frame.
    """

    def __init__(self, segments, label_fn, bbox, to_frame=None, seed=0, outside=-1):
        self.segments = list(segments)
        self.bbox = bbox
        self.to_frame = to_frame
        self.label_fn = label_fn
        self.locator = Locator(self.segments, label_fn, bbox=bbox, clamp=True,
                               outside=outside, seed=seed)

    def locate(self, q):
        p = self.to_frame(q) if self.to_frame is not None else q
        return self.locator.locate(p)

    @property
    def n_vertices(self) -> int:
        return len({s.p for s in self.segments} | {s.q for s in self.segments})

    def to_svg(self, path, size: int = 800) -> None:
        (x0, y0), (x1, y1) = self.bbox
        sx = size / max(x1 - x0, 1e-300)
        sy = size / max(y1 - y0, 1e-300)

        def tr(p):
            return (p[0] - x0) * sx, size - (p[1] - y0) * sy

        lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">',
                 f'<rect width="{size}" height="{size}" fill="white" stroke="black"/>']
        for s in self.segments:
            (a, b), (c, d) = tr(s.p), tr(s.q)
            lines.append(f'<line x1="{a:.2f}" y1="{b:.2f}" x2="{c:.2f}" y2="{d:.2f}" '
                         'stroke="black" stroke-width="0.6"/>')
        lines.append("</svg>")
        with open(path, "w") as fh:
            fh.write("\n".join(lines))


def first_dominating(samples: np.ndarray, corners: np.ndarray, chunk: int = 4096) -> np.ndarray:
    """Per sample, the least ``i`` with ``sample <= corners[i]`` componentwise, else -1."""
    out = np.full(len(samples), -1, dtype=int)
    if len(corners) == 0:
        return out
    for s in range(0, len(samples), chunk):
        P = samples[s: s + chunk]
        dom = (P[:, None, 0] <= corners[None, :, 0]) & (P[:, None, 1] <= corners[None, :, 1])
        has = dom.any(axis=1)
        out[s: s + chunk][has] = dom.argmax(axis=1)[has]
    return out
