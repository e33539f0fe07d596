"""Tests for the maximum induced acyclic subset solver."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flipdist.acyclic import (
    AcyclicResult,
    format_acyclic_result,
    heuristic_acyclic,
    is_acyclic,
    max_acyclic_subset,
    parse_acyclic_result,
)
from flipdist.errors import FormatError, TooLargeForExact


def oracle_max_acyclic(n, edges):
    """Exhaustive: largest k first, lexicographic subsets within each k."""
    for k in range(n, -1, -1):
        for sub in combinations(range(n), k):
            if is_acyclic(edges, sub):
                return k, sub
    return 0, ()


def random_digraph(rng, n, p):
    edges = set()
    for a in range(n):
        for b in range(n):
            if a != b and rng.random() < p:
                edges.add((a, b))
    return edges


def test_is_acyclic_basics():
    assert is_acyclic(set(), [])
    assert is_acyclic(set(), [0])
    assert is_acyclic({(0, 1), (1, 2)}, [0, 1, 2])
    assert not is_acyclic({(0, 1), (1, 2), (2, 0)}, [0, 1, 2])
    assert not is_acyclic({(0, 1), (1, 0)}, [0, 1])
    # edges leaving the induced set are ignored
    assert is_acyclic({(0, 1), (1, 2), (2, 0)}, [0, 1])


def test_two_cycle_keeps_one_vertex():
    res = max_acyclic_subset([0, 1], {(0, 1), (1, 0)})
    assert res == AcyclicResult(1, (0,), True)


def test_directed_triangle_keeps_two():
    res = max_acyclic_subset([0, 1, 2], {(0, 1), (1, 2), (2, 0)})
    assert res == AcyclicResult(2, (0, 1), True)


def test_bidirected_triangle_keeps_one():
    edges = {(a, b) for a in range(3) for b in range(3) if a != b}
    res = max_acyclic_subset([0, 1, 2], edges)
    assert res == AcyclicResult(1, (0,), True)


def test_acyclic_graph_keeps_everything():
    edges = {(0, 2), (1, 2), (2, 3), (0, 3)}
    res = max_acyclic_subset(range(4), edges)
    assert res == AcyclicResult(4, (0, 1, 2, 3), True)
    heur = heuristic_acyclic(range(4), edges)
    assert heur.size == 4 and not heur.exact


def test_matches_exhaustive_oracle_on_random_digraphs():
    rng = random.Random(20260814)
    for _ in range(120):
        n = rng.randint(0, 9)
        edges = random_digraph(rng, n, rng.choice([0.15, 0.3, 0.5]))
        size, witness = oracle_max_acyclic(n, edges)
        res = max_acyclic_subset(range(n), edges)
        assert res.exact
        assert res.size == size
        assert res.members == witness  # lexicographically smallest optimum
        assert is_acyclic(edges, res.members)


def test_heuristic_is_sound_and_at_most_exact():
    rng = random.Random(99)
    for _ in range(80):
        n = rng.randint(0, 10)
        edges = random_digraph(rng, n, 0.3)
        heur = heuristic_acyclic(range(n), edges)
        assert not heur.exact
        assert is_acyclic(edges, heur.members)
        exact = max_acyclic_subset(range(n), edges)
        assert heur.size <= exact.size
        # deterministic
        again = heuristic_acyclic(range(n), edges)
        assert again == heur


def test_monotone_under_vertex_removal():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(2, 8)
        edges = random_digraph(rng, n, 0.35)
        full = max_acyclic_subset(range(n), edges).size
        v = rng.randrange(n)
        rest = [u for u in range(n) if u != v]
        sub_edges = {(a, b) for (a, b) in edges if a != v and b != v}
        smaller = max_acyclic_subset(rest, sub_edges).size
        assert full - 1 <= smaller <= full


def test_vertex_labels_are_preserved():
    res = max_acyclic_subset([4, 7, 9], {(4, 7), (7, 4), (9, 4)})
    assert res.size == 2
    assert res.members == (4, 9)


def test_exact_cap():
    with pytest.raises(TooLargeForExact):
        max_acyclic_subset(range(41), set())
    # the heuristic has no cap
    assert heuristic_acyclic(range(41), set()).size == 41


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 7), st.integers(0, 2**32 - 1))
def test_exact_dominates_heuristic(n, seed):
    edges = random_digraph(random.Random(seed), n, 0.4)
    exact = max_acyclic_subset(range(n), edges)
    heur = heuristic_acyclic(range(n), edges)
    assert is_acyclic(edges, exact.members)
    assert is_acyclic(edges, heur.members)
    assert heur.size <= exact.size == len(exact.members)


def test_format_round_trip():
    res = AcyclicResult(2, (0, 3), True)
    text = format_acyclic_result(res)
    assert text == "ac 2 exact\nin 0\nin 3\n"
    assert parse_acyclic_result(text) == res
    heur = AcyclicResult(1, (5,), False)
    assert parse_acyclic_result(format_acyclic_result(heur)) == heur


def test_format_rejects_garbage():
    with pytest.raises(FormatError):
        parse_acyclic_result("nonsense\n")
    with pytest.raises(FormatError):
        parse_acyclic_result("ac 2 kinda\nin 0\nin 1\n")
    with pytest.raises(FormatError):
        parse_acyclic_result("ac 2 exact\nin 0\n")
    with pytest.raises(FormatError):
        parse_acyclic_result("ac 1 exact\nout 0\n")
