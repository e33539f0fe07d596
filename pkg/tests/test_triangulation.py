import pytest
from hypothesis import given, settings, strategies as st

from flipdist import triangulation as tri
from flipdist.errors import (
    CrossingPair,
    FormatError,
    NotADiagonal,
    NotInterior,
    TooLarge,
    WrongCount,
)


def catalan_oracle(k):
    """Independent Catalan recurrence: C_0 = 1, C_k = sum C_i * C_{k-1-i}."""
    c = [1]
    for m in range(1, k + 1):
        c.append(sum(c[i] * c[m - 1 - i] for i in range(m)))
    return c[k]


def test_catalan_oracle_self_check():
    assert [catalan_oracle(k) for k in range(9)] == [
        1, 1, 2, 5, 14, 42, 132, 429, 1430,
    ]


def test_enumerate_counts_match_catalan():
    for n in range(3, 13):
        ts = tri.enumerate_triangulations(n)
        assert len(ts) == catalan_oracle(n - 2)
        # no duplicates
        assert len({t.diagonals for t in ts}) == len(ts)


def test_enumerate_cap():
    with pytest.raises(TooLarge):
        tri.enumerate_triangulations(tri.ENUMERATE_CAP + 1)


def test_crosses_basic():
    assert tri.crosses((0, 2), (1, 3))
    assert not tri.crosses((0, 2), (2, 4))  # shared endpoint
    assert not tri.crosses((0, 2), (0, 3))
    assert not tri.crosses((1, 3), (4, 6))  # disjoint intervals
    assert not tri.crosses((1, 5), (2, 4))  # nested


@given(st.lists(st.integers(min_value=0, max_value=30), min_size=4, max_size=4,
                unique=True))
def test_crosses_symmetric_irreflexive(vs):
    e1 = (vs[0], vs[1])
    e2 = (vs[2], vs[3])
    assert tri.crosses(e1, e2) == tri.crosses(e2, e1)
    assert not tri.crosses(e1, e1)


def test_validate_rejects_wrong_count():
    with pytest.raises(WrongCount):
        tri.Triangulation(6, [(0, 2), (0, 3)])


def test_validate_rejects_crossing():
    with pytest.raises(CrossingPair):
        tri.Triangulation(6, [(0, 2), (1, 3), (0, 4)])


def test_validate_rejects_boundary_as_diagonal():
    with pytest.raises(NotInterior):
        tri.Triangulation(6, [(0, 1), (0, 3), (0, 4)])
    with pytest.raises(NotInterior):
        tri.Triangulation(6, [(0, 5), (0, 3), (0, 4)])


def test_validate_large_crossing_found():
    # stack sweep must find a crossing buried among many nested chords
    diags = [(0, k) for k in range(2, 8)] + [(1, 9)]
    assert len(diags) == 10 - 3
    t = tri.Triangulation(10, diags, check=False)
    with pytest.raises(CrossingPair):
        tri.validate(t)


def test_flip_pentagon_example():
    # derived by hand: in the 5-gon fan at 0, flipping (0, 3) gives the
    # quadrilateral 0,2,3,4 whose other diagonal is (2, 4)
    t = tri.Triangulation(5, [(0, 2), (0, 3)])
    t2 = tri.flip(t, (0, 3))
    assert t2.diagonals == frozenset({(0, 2), (2, 4)})


def test_flip_involution_everywhere():
    for n in (5, 6, 7):
        for t in tri.enumerate_triangulations(n):
            for e in t.diagonals:
                t2 = tri.flip(t, e)
                new_e = next(iter(t2.diagonals - t.diagonals))
                assert tri.flip(t2, new_e) == t


def test_flip_errors():
    t = tri.Triangulation(6, [(0, 2), (0, 3), (0, 4)])
    with pytest.raises(NotADiagonal):
        tri.flip(t, (1, 3))
    with pytest.raises(NotInterior):
        tri.flip(t, (2, 3))


def test_flip_neighbors_count():
    for n in (4, 5, 6, 7, 8):
        for t in tri.enumerate_triangulations(n)[:50]:
            ns = tri.flip_neighbors(t)
            assert len(ns) == n - 3
            assert len(set(ns)) == n - 3
            for u in ns:
                assert len(u.diagonals ^ t.diagonals) == 2


def test_faces_count_and_cover():
    for n in (4, 5, 6, 8):
        for t in tri.enumerate_triangulations(n)[:30]:
            fs = tri.faces(t)
            assert len(fs) == n - 2
            # every diagonal on exactly 2 faces, every boundary edge on 1
            from collections import Counter
            edge_count = Counter()
            for a, b, c in fs:
                for e in ((a, b), (b, c), (a, c)):
                    edge_count[tri.normalize(e)] += 1
            for e in t.diagonals:
                assert edge_count[e] == 2
            for v in range(n - 1):
                assert edge_count[(v, v + 1)] == 1
            assert edge_count[(0, n - 1)] == 1


def test_fan_triangulation():
    t = tri.fan(6, 0)
    assert t.diagonals == frozenset({(0, 2), (0, 3), (0, 4)})
    t = tri.fan(6, 2)
    assert t.diagonals == frozenset({(0, 2), (2, 4), (2, 5)})


def test_canonical_key_distinct_and_stable():
    ts = tri.enumerate_triangulations(7)
    keys = {tri.canonical_key(t) for t in ts}
    assert len(keys) == len(ts)
    t = tri.Triangulation(6, [(0, 4), (0, 2), (0, 3)])
    assert tri.canonical_key(t) == b"6;0,2;0,3;0,4"


def test_tri_format_roundtrip():
    for t in tri.enumerate_triangulations(7)[:25]:
        text = tri.format_tri(t)
        assert tri.parse_tri(text) == t


def test_tri_format_rejects_bad_input():
    with pytest.raises(FormatError):
        tri.parse_tri("d 0 2\n")
    with pytest.raises(FormatError):
        tri.parse_tri("n 6\nd 0 3\nd 0 2\nd 0 4\n")  # out of order
    with pytest.raises(FormatError):
        tri.parse_tri("n 6\nd 0 2\nd 0 2\nd 0 3\n")  # duplicate
    with pytest.raises(FormatError):
        tri.parse_tri("n 6\nd 2 0\nd 0 3\nd 0 4\n")  # a >= b
    with pytest.raises(WrongCount):
        tri.parse_tri("n 6\nd 0 2\n")
    with pytest.raises(CrossingPair):
        tri.parse_tri("n 6\nd 0 2\nd 0 4\nd 1 3\n")


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=4, max_value=8), st.data())
def test_flip_then_validate_property(n, data):
    ts = tri.enumerate_triangulations(n)
    t = ts[data.draw(st.integers(min_value=0, max_value=len(ts) - 1))]
    e = data.draw(st.sampled_from(sorted(t.diagonals)))
    t2 = tri.flip(t, e)
    tri.validate(t2)
    assert t2 != t
