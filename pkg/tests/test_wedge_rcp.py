import math


from rcp.geometry import Wedge
from rcp.oracle import RangePredicate, rcp_answer
from rcp.wedge_rcp import Staircase, WedgeRcp, build, query

NE = Wedge((0.0, 0.0), (1.0, 0.0), (0.0, 1.0))


def test_two_point_examples():
    st = build([(1, 1), (2, 1)], NE)
    p = query(st, (0, 0))
    assert (p.a, p.b) == ((1.0, 1.0), (2.0, 1.0))
    assert query(st, (1.5, 0)) is None


def test_degenerate_sets_answer_none():
    for S in ([], [(1.0, 2.0)]):
        st = WedgeRcp(S, NE)
        assert st.query((0, 0)) is None and st.query((-5, 3)) is None


def test_single_region_one_vertex():
    st = WedgeRcp([(1, 1), (2, 1.5)], NE)
    assert st.audit.new_vertices == [1]


def test_second_region_adds_at_most_two():
    for S in ([(1, 1), (1.2, 1.1), (5, 5)], [(0, 3), (0.3, 3.1), (3, 0), (3.1, 0.5)]):
        st = WedgeRcp(S, NE)
        assert st.audit.new_vertices[0] == 1 and all(v <= 2 for v in st.audit.new_vertices[1:2])


def test_staircase_keeps_maximal_corners():
    s = Staircase()
    for c in [(1, 5), (3, 3), (5, 1), (2, 2), (4, 4)]:
        if not s.dominated(c):
            s.insert(c)
    assert list(zip(s.us, s.vs)) == [(1, 5), (4, 4), (5, 1)]
    assert s.hit_left(3.5) == 4 and s.hit_down(4.5) == 1 and s.hit_down(6) is None


def test_differential(rng):
    for t in range(12):
        n = int(rng.integers(2, 250))
        S = rng.uniform(0, 10, (n, 2))
        w = Wedge.from_angle(rng.uniform(0.1, 3.0), rng.uniform(0, 2 * math.pi), tuple(rng.uniform(-2, 2, 2)))
        st = WedgeRcp(S, w, seed=t)
        for q in rng.uniform(-14, 14, (300, 2)):
            assert st.query(tuple(q)) == rcp_answer(S, RangePredicate(w, tuple(q)))


def test_larger_range_never_longer(rng):
    S = rng.uniform(0, 10, (150, 2))
    w = Wedge.from_angle(1.2, 0.4)
    st = WedgeRcp(S, w)
    back = (-(w.dir1[0] + w.dir2[0]), -(w.dir1[1] + w.dir2[1]))  # moves the apex outward
    for q in rng.uniform(-2, 10, (200, 2)):
        a = st.query(tuple(q))
        b = st.query((q[0] + back[0], q[1] + back[1]))
        if a is not None:
            assert b is not None and b.length <= a.length


def test_linear_space(rng):
    S = rng.uniform(0, 10, (300, 2))
    st = WedgeRcp(S, Wedge.from_angle(0.9, 1.0))
    m = len(st.cands)
    assert st.audit.total <= 3 * m
    assert st.sub.locator.n_trapezoids <= 40 * m + 40
