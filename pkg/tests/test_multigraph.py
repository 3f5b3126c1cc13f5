import itertools
import random

import pytest

from mgreduce.errors import GuardExceeded
from mgreduce.field import make_field
from mgreduce.multigraph import (
    MultiGraph,
    VertexBijection,
    apply_bijection,
    brute_force_isomorphism,
    edge_filter,
    incidence_matrix,
    is_isomorphism,
    parse,
    random_isomorphic_copy,
    random_multigraph,
    serialize,
)

TRIANGLE = "3\n1 2 1\n1 3 1\n2 3 1"


def exhaustive_isomorphic(G1, G2):
    if G1.n != G2.n:
        return False
    return any(is_isomorphism(G1, G2, VertexBijection(p))
               for p in itertools.permutations(range(1, G1.n + 1)))


def test_parse_triangle():
    G = parse(TRIANGLE)
    assert G.n == 3 and G.h == 1
    assert G.edges == ((1, 2, 1), (1, 3, 1), (2, 3, 1))


def test_parse_defaults_and_comments():
    G = parse("# a path\n4 3\n2 1   # reversed pair\n3 4 2\n")
    assert G.h == 3
    assert G.edges == ((1, 2, 1), (3, 4, 2))


@pytest.mark.parametrize("text", [
    "2\n1 1 1",          # loop
    "3 2\n1 2 5",        # weight above declared h
    "3\n1 2\n2 1",       # duplicate pair
    "3\n1 4",            # vertex out of range
    "3\n1 2 x",          # malformed
    "",                  # empty
    "3 1\n1 2 0",        # zero weight
])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse(text)


def test_parse_explicit_h_override():
    with pytest.raises(ValueError):
        parse("3\n1 2 5", h=2)


def test_round_trip():
    text = "5 3\n1 2 3\n2 5 1\n3 4 2\n"
    assert serialize(parse(text)) == text
    G = parse("4\n3 4\n2 1 2")
    assert parse(serialize(G)) == G


def test_h_bound_enforced():
    with pytest.raises(ValueError):
        MultiGraph.build(3, [(1, 2, 4)])


def test_edge_filter():
    G = parse(TRIANGLE)
    assert edge_filter(G, 1) == list(G.edges)
    G2 = MultiGraph.build(3, [(1, 2), (1, 3), (2, 3)], h=2)
    assert edge_filter(G2, 2) == []
    W = MultiGraph.build(3, [(1, 2, 1), (1, 3, 2), (2, 3, 2)])
    assert edge_filter(W, 2) == [(1, 3, 2), (2, 3, 2)]
    with pytest.raises(ValueError):
        edge_filter(W, 3)


def test_incidence_matrix():
    assert incidence_matrix(parse(TRIANGLE), make_field(1)) == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
    F = make_field(2)
    G = MultiGraph.build(3, [(1, 2, 1), (2, 3, 2)])
    assert incidence_matrix(G, F) == [[1, 1, 0], [0, F.e, F.e]]
    iso = MultiGraph.build(4, [(1, 2)])
    assert [row[2] for row in incidence_matrix(iso, make_field(1))] == [0]
    with pytest.raises(ValueError):
        incidence_matrix(G, make_field(1))


def test_incidence_rows_have_two_equal_entries():
    F = make_field(3)
    for seed in range(20):
        G = random_multigraph(6, 4, 0.6, seed)
        for (u, v, w), row in zip(G.edges, incidence_matrix(G, F)):
            assert [x for x in row if x] == [F.exp(w - 1)] * 2


def test_apply_bijection_examples():
    T = parse(TRIANGLE)
    assert apply_bijection(T, VertexBijection.identity(3)) == T
    assert apply_bijection(T, VertexBijection((2, 3, 1))) == T
    P = MultiGraph.build(3, [(1, 2), (2, 3)])
    assert apply_bijection(P, VertexBijection((3, 2, 1))) == P
    with pytest.raises(ValueError):
        apply_bijection(T, VertexBijection.identity(4))


def test_isomorphism_examples():
    T = parse(TRIANGLE)
    relabeled = apply_bijection(T, VertexBijection((3, 1, 2)))
    assert brute_force_isomorphism(T, relabeled) is not None
    tri_iso = MultiGraph.build(4, [(1, 2), (1, 3), (2, 3)])
    path4 = MultiGraph.build(4, [(1, 2), (2, 3), (3, 4)])
    assert brute_force_isomorphism(tri_iso, path4) is None


def test_weights_must_align():
    a = MultiGraph.build(3, [(1, 2, 1), (2, 3, 2)])
    b = MultiGraph.build(3, [(1, 2, 2), (2, 3, 1)])
    c = MultiGraph.build(3, [(1, 2, 1), (1, 3, 2)])
    assert brute_force_isomorphism(a, b) is not None  # swap 1 and 3
    sigma = brute_force_isomorphism(a, c)
    assert sigma is not None and is_isomorphism(a, c, sigma)
    d = MultiGraph.build(3, [(1, 2, 2), (2, 3, 2)])
    assert brute_force_isomorphism(a, d) is None


def test_oracle_agrees_with_exhaustive_search():
    rng = random.Random(7)
    for _ in range(120):
        n = rng.randint(1, 6)
        h = rng.randint(1, max(1, min(3, n * (n - 1) // 2)))
        G1 = random_multigraph(n, h, rng.random(), rng.random())
        if rng.random() < 0.5:
            G2, _ = random_isomorphic_copy(G1, rng.random())
        else:
            G2 = random_multigraph(n, h, rng.random(), rng.random())
            if len(G2.edges) != len(G1.edges):
                G2, _ = random_isomorphic_copy(G1, rng.random())
                edges = list(G2.edges)
                if edges:
                    u, v, w = edges[0]
                    edges[0] = (u, v, w % h + 1)
                G2 = MultiGraph.build(n, edges, h)
        found = brute_force_isomorphism(G1, G2)
        assert (found is not None) == exhaustive_isomorphic(G1, G2)
        if found is not None:
            assert is_isomorphism(G1, G2, found)


def test_random_generation():
    assert random_multigraph(5, 1, 0.0, 1).edges == ()
    assert random_multigraph(3, 1, 1.0, 1).edges == ((1, 2, 1), (1, 3, 1), (2, 3, 1))
    assert random_multigraph(7, 3, 0.5, 42) == random_multigraph(7, 3, 0.5, 42)
    for seed in range(30):
        G = random_multigraph(7, 3, 0.5, seed)
        H, sigma = random_isomorphic_copy(G, seed)
        assert H == apply_bijection(G, sigma)
        assert brute_force_isomorphism(G, H) is not None


def test_guard():
    G = MultiGraph.build(11, [])
    with pytest.raises(GuardExceeded):
        brute_force_isomorphism(G, G)


def test_bijection_validation():
    with pytest.raises(ValueError):
        VertexBijection((1, 1, 2))
    s = VertexBijection((2, 3, 1))
    assert s.inverse() == VertexBijection((3, 1, 2))
