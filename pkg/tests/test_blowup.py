"""Tests for spine pairs, blow-ups, and conflict graphs."""

import random

import pytest

from flipdist.blowup import (
    ABOVE,
    BELOW,
    CROSSING,
    OTHER,
    ConflictGraph,
    SpinePair,
    blow_up,
    check_acyclic_premises,
    classify_pair,
    conflict_graph,
    fan_crossing_counts,
    format_conflict_graph,
    parse_conflict_graph,
    spine_pairs,
)
from flipdist.errors import FormatError, NotAcyclic, WrongTarget
from flipdist.triangulation import (
    Triangulation,
    enumerate_triangulations,
    fan,
    validate,
)


def opposing_pair():
    """Six-gon pair with one below and one above spine pair in mutual
    conflict.  Start has triangles (0,1,3), (1,2,3), (0,3,4), (0,4,5);
    target has (0,1,5), (1,2,4)... see the diagonals."""
    t1 = Triangulation(6, [(0, 3), (1, 3), (0, 4)])
    t2 = Triangulation(6, [(1, 5), (2, 4), (2, 5)])
    return t1, t2


def test_classify_pair():
    assert classify_pair(SpinePair(0, (4, 5), 0, 2)) == ABOVE
    assert classify_pair(SpinePair(0, (0, 1), 3, 5)) == BELOW
    assert classify_pair(SpinePair(0, (2, 3), 5, 0)) == CROSSING
    # coinciding apexes and mirrored variants fall back to other
    assert classify_pair(SpinePair(0, (2, 3), 0, 0)) == OTHER
    assert classify_pair(SpinePair(0, (2, 3), 0, 5)) == OTHER
    assert classify_pair(SpinePair(0, (0, 1), 5, 3)) == OTHER


def test_spine_pairs_of_fan_with_itself():
    t = fan(5, 0)
    pairs = spine_pairs(t, t)
    assert [(p.spine, p.apex_t, p.apex_tp) for p in pairs] == [
        ((2, 3), 0, 0),
        ((3, 4), 0, 0),
    ]
    assert all(p.type == OTHER for p in pairs)
    assert [p.index for p in pairs] == [0, 1]


def test_spine_pairs_need_single_spine_triangles_on_both_sides():
    # every spine edge of fan(6, 3) touches a two-spine triangle of
    # fan(6, 0) or vice versa, so no pair survives
    assert spine_pairs(fan(6, 0), fan(6, 3)) == []


def test_spine_pairs_size_mismatch():
    with pytest.raises(WrongTarget):
        spine_pairs(fan(5, 0), fan(6, 0))


def test_opposing_pair_structure():
    t1, t2 = opposing_pair()
    pairs = spine_pairs(t1, t2)
    assert [(p.spine, p.apex_t, p.apex_tp, p.type) for p in pairs] == [
        ((0, 1), 3, 5, BELOW),
        ((4, 5), 0, 2, ABOVE),
    ]


def test_opposing_pair_conflicts_form_a_two_cycle():
    t1, t2 = opposing_pair()
    h = conflict_graph(t1, t2)
    assert h.edges == {(0, 1), (1, 0)}
    assert h.doubles() == [(0, 1)]
    assert h.directed_only() == []
    assert h.successors(0) == [1]
    assert len(h) == 2


def test_blow_up_counts_and_validity():
    t1, t2 = opposing_pair()
    for beta in (1, 2, 3):
        inst = blow_up(t1, t2, beta)
        assert inst.t1.n == 6 + 2 * beta
        assert len(inst.t1.diagonals) == 3 + 2 * beta
        assert len(inst.t2.diagonals) == 3 + 2 * beta
        validate(inst.t1)
        validate(inst.t2)
        # order preserved and new points strictly inside their spine edge
        values = [inst.vertex_map[v] for v in range(6)]
        assert values == sorted(values)
        for p in inst.pairs:
            lo = inst.vertex_map[p.spine[0]]
            hi = inst.vertex_map[p.spine[1]]
            assert inst.points[p.index] == list(range(lo + 1, hi))
            assert len(inst.points[p.index]) == beta


def test_blow_up_beta_zero_is_identity():
    t1, t2 = opposing_pair()
    inst = blow_up(t1, t2, 0)
    assert inst.t1 == t1 and inst.t2 == t2
    assert inst.vertex_map == {v: v for v in range(6)}
    assert all(pts == [] for pts in inst.points)


def test_blow_up_rejects_negative_beta():
    with pytest.raises(WrongTarget):
        blow_up(*opposing_pair(), -1)


def test_blow_up_fans():
    t1, t2 = opposing_pair()
    inst = blow_up(t1, t2, 2)
    # map: 0->0, 1->3, 2->4, 3->5, 4->6, 5->9, points (1,2) and (7,8)
    assert inst.vertex_map == {0: 0, 1: 3, 2: 4, 3: 5, 4: 6, 5: 9}
    assert inst.points == [[1, 2], [7, 8]]
    assert inst.fan_t1(0) == frozenset({(1, 5), (2, 5)})
    assert inst.fan_t2(0) == frozenset({(1, 9), (2, 9)})
    assert inst.fan_t1(1) == frozenset({(0, 7), (0, 8)})
    assert inst.fan_t2(1) == frozenset({(4, 7), (4, 8)})
    assert inst.fan_t1(0) <= inst.t1.diagonals
    assert inst.fan_t2(0) <= inst.t2.diagonals


def small_corpus():
    """Seeded mix of six-gon and seven-gon triangulation pairs."""
    rng = random.Random(7)
    sixes = enumerate_triangulations(6)
    sevens = enumerate_triangulations(7)
    pairs = [(a, b) for a in sixes for b in sixes]
    pairs += [(rng.choice(sevens), rng.choice(sevens)) for _ in range(120)]
    return pairs


def test_fan_crossings_are_all_or_nothing():
    checked = 0
    for t1, t2 in small_corpus():
        for beta in (1, 2, 3):
            inst = blow_up(t1, t2, beta)
            m = len(inst.pairs)
            for i in range(m):
                for j in range(m):
                    if i == j:
                        continue
                    count = fan_crossing_counts(inst, i, j)
                    assert count in (0, beta * beta)
                    checked += 1
    assert checked > 1000


def test_conflict_graph_does_not_depend_on_beta():
    for t1, t2 in small_corpus()[:150]:
        base = conflict_graph(t1, t2)
        for beta in (2, 3):
            inst = blow_up(t1, t2, beta)
            again = conflict_graph(inst)
            assert again.edges == base.edges
            assert [p.type for p in again.pairs] == [p.type for p in base.pairs]


def test_conflict_edges_match_fan_crossings():
    for t1, t2 in small_corpus()[:150]:
        inst = blow_up(t1, t2, 1)
        h = conflict_graph(inst)
        m = len(inst.pairs)
        expected = {
            (i, j)
            for i in range(m)
            for j in range(m)
            if i != j and fan_crossing_counts(inst, i, j) > 0
        }
        assert h.edges == expected


def test_same_type_conflicts_point_left_to_right():
    seen = 0
    for t1, t2 in small_corpus():
        h = conflict_graph(t1, t2)
        for (i, j) in h.edges:
            ti, tj = h.types[i], h.types[j]
            if ti == tj and ti != OTHER:
                assert h.pairs[i].spine < h.pairs[j].spine
                seen += 1
    assert seen >= 10


def test_identical_triangulations_have_no_conflicts():
    for t in enumerate_triangulations(6):
        assert conflict_graph(t, t).edges == set()


def test_check_acyclic_premises():
    t1, t2 = opposing_pair()
    h = conflict_graph(t1, t2)
    types = h.types
    assert types == [BELOW, ABOVE]
    # below -> above is an upward jump, so the full set fails
    edge, reason = check_acyclic_premises(h, types, {0, 1})
    assert edge == (0, 1)
    assert "below->above" in reason
    # singletons are fine
    assert check_acyclic_premises(h, types, {0}) is None
    assert check_acyclic_premises(h, types, {1}) is None
    assert check_acyclic_premises(h, types, set()) is None


def test_check_acyclic_premises_rejects_untyped_members():
    t = fan(5, 0)
    h = conflict_graph(t, t)
    edge, reason = check_acyclic_premises(h, h.types, {0})
    assert edge == (0, 0)
    assert "no named type" in reason


def test_check_acyclic_premises_allows_downward_jumps():
    pairs = [SpinePair(0, (4, 5), 0, 2), SpinePair(1, (0, 1), 3, 5)]
    h = ConflictGraph(pairs, {(0, 1)})  # above -> below only
    assert check_acyclic_premises(h, h.types, {0, 1}) is None


def test_check_acyclic_premises_guards_against_fabricated_cycles():
    # two same-type pairs in a mutual conflict cannot come from a real
    # instance; the premise check must notice the cycle
    pairs = [SpinePair(0, (4, 5), 0, 2), SpinePair(1, (6, 7), 0, 2)]
    h = ConflictGraph(pairs, {(0, 1), (1, 0)})
    with pytest.raises(NotAcyclic):
        check_acyclic_premises(h, h.types, {0, 1})


def test_format_round_trip():
    t1, t2 = opposing_pair()
    h = conflict_graph(t1, t2)
    text = format_conflict_graph(h)
    assert text == (
        "pairs 2\n"
        "pair 0 0 1 3 5 below\n"
        "pair 1 4 5 0 2 above\n"
        "conf 0 1\n"
        "conf 1 0\n"
    )
    h2 = parse_conflict_graph(text)
    assert h2.edges == h.edges
    assert h2.types == h.types
    assert [p.spine for p in h2.pairs] == [p.spine for p in h.pairs]


def test_format_rejects_garbage():
    good = "pairs 1\npair 0 4 5 0 2 above\n"
    parse_conflict_graph(good)
    with pytest.raises(FormatError):
        parse_conflict_graph("")
    with pytest.raises(FormatError):
        parse_conflict_graph("pairs 2\npair 0 4 5 0 2 above\n")
    with pytest.raises(FormatError):
        parse_conflict_graph("pairs 1\npair 0 4 5 0 2 below\n")
    with pytest.raises(FormatError):
        parse_conflict_graph("pairs 1\npair 1 4 5 0 2 above\n")
    with pytest.raises(FormatError):
        parse_conflict_graph(good + "conf 0 0\n")
    with pytest.raises(FormatError):
        parse_conflict_graph(good + "conf 0 1\n")
    with pytest.raises(FormatError):
        parse_conflict_graph(good + "flip 0 1\n")
