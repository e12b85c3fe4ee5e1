import numpy as np

from rcp.geometry import min_nonadjacent_edge_distance
from rcp.oracle import RangePredicate, points_in_range
from rcp.reporting import ConvexLayers, PrioritySearchTree, ReportingGrid, build, report

from conftest import POLYGONS, SQUARE


def test_pst_matches_scan(rng):
    xs, ys = rng.uniform(0, 1, 300), rng.uniform(0, 1, 300)
    t = PrioritySearchTree(xs, ys)
    for x0, y0 in rng.uniform(-0.1, 1.1, (200, 2)):
        assert sorted(t.query(x0, y0)) == np.flatnonzero((xs >= x0) & (ys >= y0)).tolist()


def test_convex_layers_match_scan(rng):
    P = rng.normal(0, 1, (300, 2))
    L = ConvexLayers(P)
    for _ in range(200):
        a = rng.uniform(0, 2 * np.pi)
        n = np.array([np.cos(a), np.sin(a)])
        t = rng.uniform(-2.5, 2.5)
        got = L.halfplane(n[0], n[1], t)
        assert len(got) == len(set(got))
        assert sorted(got) == np.flatnonzero(P @ n >= t).tolist()


def test_small_grids():
    g = build([(0.5, 0.5)], SQUARE, 1.0)
    assert len(g.cells) == 1 and g.stored_points == len(g.wedges)
    assert report(g, (0, 0)).tolist() == [0]
    assert report(g, (50, 50)).tolist() == []
    g = ReportingGrid([(0.1, 0.1), (0.2, 0.15), (0.3, 0.12)], SQUARE, 1.0)
    assert len(g.cells) == 1


def test_report_matches_oracle(rng):
    for name, poly in POLYGONS.items():
        S = rng.uniform(0, 6, (300, 2))
        g = ReportingGrid(S, poly, min_nonadjacent_edge_distance(poly))
        assert g.stored_points <= len(g.wedges) * len(S)
        for q in rng.uniform(-3, 6, (300, 2)):
            got = report(g, tuple(q))
            assert len(got) == len(set(got.tolist()))
            want = points_in_range(S, RangePredicate(poly, tuple(q)))
            assert sorted(map(tuple, S[got])) == sorted(map(tuple, want)), name
