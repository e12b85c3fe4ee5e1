import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rcp.geometry import Disc, GeometryError, Wedge
from rcp.oracle import RangePredicate, closest_pair_brute, points_in_range, rcp_answer


def test_points_in_range_examples():
    S = [(0, 0), (5, 5)]
    assert points_in_range(S, RangePredicate(Disc((0, 0), 1))).tolist() == [[0, 0]]
    assert len(points_in_range([], RangePredicate(Disc((0, 0), 1)))) == 0


def test_points_in_range_matches_scan(rng):
    S = rng.uniform(0, 10, (200, 2))
    w = Wedge.from_angle(1.1, 0.7)
    q = (3.0, 2.0)
    got = {tuple(p) for p in points_in_range(S, RangePredicate(w, q))}
    assert got == {tuple(p) for p in S if w.contains(tuple(p), q)}


def test_closest_pair_examples():
    p = closest_pair_brute([(0, 0), (3, 0), (3, 1)])
    assert (p.a, p.b) == ((3.0, 0.0), (3.0, 1.0))
    assert closest_pair_brute([(1, 1)]) is None
    with pytest.raises(GeometryError):
        closest_pair_brute([(1, 1), (2, 2), (1, 1)])


def test_closest_pair_matches_sort(rng):
    P = rng.uniform(0, 1, (100, 2))
    best = min(itertools.combinations(map(tuple, P), 2), key=lambda ab: math.dist(*ab))
    got = closest_pair_brute(P)
    assert {got.a, got.b} == set(best)


def test_rcp_answer_composes():
    S = [(0, 0), (0.5, 0), (5, 5), (5.1, 5)]
    assert rcp_answer(S, RangePredicate(Disc((0, 0), 1))).length == pytest.approx(0.5)
    assert rcp_answer(S, RangePredicate(Disc((0, 0), 1), (20, 20))) is None


@given(st.floats(0.5, 3), st.floats(0, 3))
def test_monotone_in_range(r, extra):
    rng = np.random.default_rng(7)
    S = rng.uniform(-3, 3, (40, 2))
    small = rcp_answer(S, RangePredicate(Disc((0, 0), r)))
    big = rcp_answer(S, RangePredicate(Disc((0, 0), r + extra)))
    if small is not None:
        assert big is not None and big.length <= small.length
