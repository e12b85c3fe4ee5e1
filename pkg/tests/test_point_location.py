import math

import numpy as np
import pytest

from rcp.curves import Arc, Segment, split_monotone
from rcp.geometry import GeometryError
from rcp.point_location import CrossingError, Locator, build_locator, locate


def _boxes(rng, count):
    """Disjoint axis boxes on a jittered lattice, as segments, plus a labeller."""
    boxes, segs = [], []
    k = math.ceil(math.sqrt(count))
    for i in range(count):
        gx, gy = divmod(i, k)
        x0, y0 = gx * 3 + rng.uniform(0, 0.5), gy * 3 + rng.uniform(0, 0.5)
        x1, y1 = x0 + rng.uniform(0.5, 2.0), y0 + rng.uniform(0.5, 2.0)
        c = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
        segs += [Segment(c[j], c[(j + 1) % 4]) for j in range(4)]
        boxes.append((x0, y0, x1, y1))
    B = np.array(boxes)

    def label(P):
        P = np.asarray(P).reshape(-1, 2)
        inside = ((P[:, None, 0] > B[None, :, 0]) & (P[:, None, 0] < B[None, :, 2])
                  & (P[:, None, 1] > B[None, :, 1]) & (P[:, None, 1] < B[None, :, 3]))
        return np.where(inside.any(1), inside.argmax(1), -1).tolist()
    return segs, label


def test_split_monotone():
    assert len(split_monotone(Arc((0, 0), 1, (1, 0), (1, 0)))) == 4
    s = Segment((0, 0), (1, 1))
    assert [f.curve for f in split_monotone(s)] == [s]
    arc = Arc((0, 0), 1, (math.cos(-0.5), math.sin(-0.5)), (math.cos(0.5), math.sin(0.5)))
    parts = split_monotone(arc)
    assert len(parts) == 2 and parts[0].endpoints[1] == (1.0, 0.0)
    with pytest.raises(GeometryError):
        Segment((1, 1), (1, 1))


def test_vertical_segment_sides():
    loc = build_locator([Segment((0, -1), (0, 1))], lambda P: ["left" if x < 0 else "right" for x, _ in P],
                        bbox=((-2, -2), (2, 2)))
    assert locate(loc, (-1, 0)) == "left" and locate(loc, (1, 0)) == "right"
    assert locate(loc, (0, 0)) == "right"  # tie resolves towards (+1, +1)


def test_circle_in_out():
    circle = Arc((0, 0), 1, (0, 1), (0, 1))
    loc = Locator([circle], lambda P: ["in" if math.hypot(*p) < 1 else "out" for p in P],
                  bbox=((-3, -3), (3, 3)))
    assert loc.locate((0, 0)) == "in" and loc.locate((2, 0)) == "out"


def test_staircase_tie_rule():
    stair = [Segment((0, 2), (1, 2)), Segment((1, 2), (1, 1)), Segment((1, 1), (2, 1)), Segment((2, 1), (2, 0))]

    def label(P):
        return ["below" if (x < 1 and y < 2) or (x < 2 and y < 1) else "above" for x, y in P]
    loc = Locator(stair, label, bbox=((-1, -1), (3, 3)))
    for q in [(0.5, 2.0), (1.0, 1.5), (1.5, 1.0), (2.0, 0.5)]:
        assert loc.locate(q) == label([(q[0] + 1e-7, q[1] + 1e-7)])[0]


def test_random_boxes_and_arcs_match_oracle(rng):
    segs, box_label = _boxes(rng, 40)
    circles = [((x, -4.0), 1.2) for x in np.arange(0, 30, 3.0)]
    arcs = [Arc(c, r, (c[0], c[1] + r), (c[0], c[1] + r)) for c, r in circles]

    def label(P):
        P = np.asarray(P).reshape(-1, 2)
        inc = [any(math.hypot(x - c[0], y - c[1]) < r for c, r in circles) for x, y in P]
        return list(zip(box_label(P), inc))
    for seed in range(3):
        loc = Locator(segs + arcs, label, seed=seed)
        (x0, y0), (x1, y1) = loc.bbox
        Q = rng.uniform((x0, y0), (x1, y1), (3000, 2))
        want = label(Q)
        assert all(loc.locate(tuple(q)) == w for q, w in zip(Q, want))


def test_crossing_fragments_rejected():
    with pytest.raises(CrossingError) as e:
        Locator([Segment((0, 0), (1, 1)), Segment((0, 1), (1, 0))], lambda P: [0] * len(P))
    assert len(e.value.pair) == 2


def test_linear_size_and_log_depth(rng):
    means = {}
    for count in (3, 25, 250):
        segs, label = _boxes(rng, count)
        loc = Locator(segs, label, seed=1)
        assert loc.n_trapezoids <= 8 * len(segs)
        (x0, y0), (x1, y1) = loc.bbox
        Q = rng.uniform((x0, y0), (x1, y1), (2000, 2))
        means[len(segs)] = np.mean([loc.path_length(tuple(q)) for q in Q])
    assert means[1000] / means[100] <= 2.0


def test_outside_and_clamp():
    seg = [Segment((0, 0), (1, 0))]
    lab = lambda P: ["up" if y > 0 else "down" for _, y in P]  # noqa: E731
    assert Locator(seg, lab, bbox=((0, -1), (1, 1)), outside="far").locate((5, 5)) == "far"
    assert Locator(seg, lab, bbox=((0, -1), (1, 1)), clamp=True).locate((5, 5)) == "up"
