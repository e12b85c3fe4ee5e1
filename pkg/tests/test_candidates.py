import math

import numpy as np
import pytest

from rcp.candidates import (FLAT, STEEP, CandidatePair, CandidateSet, arrangement_sample_candidates,
                            classify, cowedge_candidates, phi_star, short_candidates, split_by_sector,
                            wedge_candidates, sector_of)
from rcp.geometry import CoWedge, Disc, GeometryError, PointPair, Wedge
from rcp.invariants import crossing_pairs, is_bipartite, rpoint_coloring, sector_cycles, steep_angle_violations
from rcp.oracle import RangePredicate, rcp_answer

NE = Wedge((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))


def pairs(cs):
    return {c.pair for c in cs}


def test_two_points_single_candidate():
    S = [(0, 0), (1, 0.3)]
    for shape in (NE, CoWedge.from_angle(4.0, 0.2), Disc((0, 0), 5)):
        cs = wedge_candidates(S, shape) if shape is NE else arrangement_sample_candidates(S, shape)
        assert len(cs) == 1
    assert len(cowedge_candidates(S, CoWedge.from_angle(4.0))) == 1


def test_quadrant_example():
    S = [(0, 0), (1, 0), (0.4, 3)]
    cs = wedge_candidates(S, NE)
    target = PointPair.of((0, 0), (1, 0))
    hit = [c for c in cs if c.pair == target]
    assert hit and hit[0].witness == pytest.approx((0, 0))


def test_wedge_enumerators_agree(rng):
    for _ in range(50):
        S = rng.uniform(0, 10, (20, 2))
        w = Wedge.from_angle(rng.uniform(0.2, 3.0), rng.uniform(0, 6.28), tuple(rng.uniform(-1, 1, 2)))
        a = wedge_candidates(S, w)
        assert pairs(a) == pairs(arrangement_sample_candidates(S, w))
        assert not a.invalid_witnesses()


def test_cowedge_enumerators_agree(rng):
    for _ in range(20):
        S = rng.uniform(0, 10, (20, 2))
        c = CoWedge.from_angle(rng.uniform(3.3, 6.0), rng.uniform(0, 6.28))
        a = cowedge_candidates(S, c)
        assert pairs(a) == pairs(arrangement_sample_candidates(S, c))
        assert not a.invalid_witnesses()


def test_cowedge_finds_halfplane_style_pair():
    c = CoWedge.from_angle(3 * math.pi / 2)  # misses the open fourth quadrant
    S = [(-5.0, -3.0), (-5.1, -3.2), (4.0, -4.0), (6.0, -6.5), (2.0, 7.0)]
    got = pairs(cowedge_candidates(S, c))
    assert PointPair.of((-5.0, -3.0), (-5.1, -3.2)) in got


def test_classify_examples():
    w = Wedge.from_angle(math.pi / 6)
    flat = CandidatePair(PointPair.of((0, 0), (1, 0.1)), 0, witness=(0, 0))
    assert classify(w, flat) == FLAT
    # apex angle larger than the angle at b
    wide = Wedge.from_angle(2.5)
    p = CandidatePair(PointPair.of((1, 0), (math.cos(2.5), math.sin(2.5))), 0, witness=(0, 0))
    assert classify(wide, p) == FLAT
    far = CandidatePair(PointPair.of((10, 0), (10 * math.cos(math.pi / 6), 10 * math.sin(math.pi / 6))), 0,
                        witness=(0, 0))
    assert classify(w, far) == STEEP


def test_disc_candidates_complete(rng):
    S = rng.uniform(0, 10, (120, 2))
    d = Disc((0.3, -0.2), 1.0)
    D = arrangement_sample_candidates(S, d)
    assert not D.invalid_witnesses()
    found = pairs(D)
    for q in rng.uniform(-1, 11, (2000, 2)):
        a = rcp_answer(S, RangePredicate(d, tuple(q)))
        assert a is None or a in found


def test_large_disc_gives_global_closest(rng):
    S = rng.uniform(0, 1, (30, 2))
    D = arrangement_sample_candidates(S, Disc((0, 0), 100.0))
    assert D[0].pair == rcp_answer(S, RangePredicate(Disc((0, 0), 1e6)))


def test_short_candidates_filter(rng):
    S = rng.uniform(0, 6, (60, 2))
    d = Disc((0, 0), 1.0)
    full = arrangement_sample_candidates(S, d)
    short = short_candidates(S, d, 0.8)
    assert pairs(short) == {c.pair for c in full if c.length <= 0.8}
    with pytest.raises(GeometryError):
        short_candidates(S, d, 0.0)


def test_sorted_and_csv_roundtrip(tmp_path, rng):
    S = rng.uniform(0, 5, (40, 2))
    cs = wedge_candidates(S, Wedge.from_angle(1.0, 0.5))
    L = cs.lengths()
    assert (np.diff(L) > 0).all() and [c.index for c in cs] == list(range(len(cs)))
    cs.to_csv(tmp_path / "c.csv")
    back = CandidateSet.from_csv(tmp_path / "c.csv")
    assert [(c.pair, c.cls, c.witness) for c in back] == [(c.pair, c.cls, c.witness) for c in cs]
    header = (tmp_path / "c.csv").read_text().splitlines()[0]
    assert header == "index,ax,ay,bx,by,length,class,witness_x,witness_y"


def test_wedge_candidate_structure(rng):
    for _ in range(10):
        S = rng.uniform(0, 10, (80, 2))
        th = rng.uniform(0.2, 3.0)
        w = Wedge.from_angle(th, rng.uniform(0, 6.28))
        cs = wedge_candidates(S, w)
        assert not steep_angle_violations(cs, th)
        assert not crossing_pairs([c for c in cs if c.cls == FLAT])


def test_sectors():
    assert sector_of((1, 0)) == 1
    e = 1e-6
    assert sector_of((math.cos(math.pi / 4 + e), math.sin(math.pi / 4 + e))) == 2
    assert sector_of((1, -1e-9)) == 8


def test_phi_star_structure(rng):
    for _ in range(10):
        S = rng.uniform(0, 10, (40, 2))
        c = CoWedge.from_angle(rng.uniform(3.5, 5.8), rng.uniform(0, 6.28))
        star = phi_star(cowedge_candidates(S, c))
        parts = split_by_sector(star)
        assert sorted(p.pair for ps in parts.values() for p in ps) == sorted(p.pair for p in star)
        assert not rpoint_coloring(star) and is_bipartite(star)
        assert not sector_cycles(star)


def test_wedge_cap():
    with pytest.raises(GeometryError):
        wedge_candidates(np.zeros((5, 2)) + np.arange(5)[:, None] * [1, 0.37], NE, cap=4)
