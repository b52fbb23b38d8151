from itertools import combinations, product

import pytest
from hypothesis import given, settings

from mecpoly.errors import (
    BudgetExceeded, FamilyError, Graph6HeaderError, Graph6PaddingError, Graph6TrailingError,
    Graph6TruncatedError, NodeCapError,
)
from mecpoly.graph_core import (
    Dag, Skeleton, acyclic_orientation_count, chromatic_polynomial, components, disjoint_union,
    encode_graph6, expand_connection_set, make_named, parse_graph6, structure_summary,
    topological_order,
)
from strategies import skeletons


def decode_by_hand(s):
    """Independent graph6 reader working on a '0'/'1' string."""
    n = ord(s[0]) - 63
    bits = "".join(format(ord(c) - 63, "06b") for c in s[1:])
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    return n, sorted(p for p, b in zip(pairs, bits) if b == "1")


@pytest.mark.parametrize("text, edges", [
    ("Bw", [(0, 1), (0, 2), (1, 2)]),
    ("Bg", [(0, 1), (1, 2)]),
    ("C~", list(combinations(range(4), 2))),
    ("Cl", [(0, 1), (0, 3), (1, 2), (2, 3)]),
])
def test_parse_examples(text, edges):
    g = parse_graph6(text)
    assert g.edges() == edges
    assert decode_by_hand(text) == (g.n, edges)


def test_encode_examples():
    assert encode_graph6(make_named("complete", 4)) == "C~"
    assert encode_graph6(make_named("path", 3)) == "Bg"
    assert encode_graph6(make_named("cycle", 4)) == "Cl"


def test_parse_accepts_header_and_whitespace():
    assert parse_graph6(">>graph6<<Bw\n") == parse_graph6("Bw")


def test_edge_cases_of_format():
    assert parse_graph6("?") == Skeleton.empty(0)
    assert parse_graph6("@") == Skeleton.empty(1)
    assert encode_graph6(Skeleton.empty(1)) == "@"


@pytest.mark.parametrize("text, exc", [
    ("!w", Graph6HeaderError),
    ("~??~", Graph6HeaderError),
    ("C", Graph6TruncatedError),
    ("Bgg", Graph6TrailingError),
    ("B@", Graph6PaddingError),
    ("_" + "?" * 83, NodeCapError),
])
def test_parse_errors_are_distinct(text, exc):
    with pytest.raises(exc):
        parse_graph6(text)


def test_cap_is_configurable():
    g = make_named("path", 40, cap=40)
    assert parse_graph6(encode_graph6(g), cap=40) == g


@settings(max_examples=200)
@given(skeletons(min_n=0, max_n=12))
def test_graph6_round_trip(g):
    text = encode_graph6(g)
    assert parse_graph6(text) == g
    assert decode_by_hand(text) == (g.n, g.edges())


def test_skeleton_invariants():
    with pytest.raises(ValueError):
        Skeleton(2, (0b10, 0))  # asymmetric
    with pytest.raises(ValueError):
        Skeleton(1, (1,))  # loop
    with pytest.raises(ValueError):
        Skeleton.from_edges(2, [(0, 2)])


def test_dag_invariants():
    g = make_named("cycle", 3)
    with pytest.raises(ValueError, match="cycle"):
        Dag.from_arcs(g, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(ValueError, match="unoriented"):
        Dag.from_arcs(g, [(0, 1), (1, 2)])
    with pytest.raises(ValueError, match="both ways"):
        Dag.from_arcs(g, [(0, 1), (1, 0), (1, 2), (0, 2)])
    d = Dag.from_arcs(g, [(0, 1), (1, 2), (0, 2)])
    assert d.topological_order() == [0, 1, 2]
    assert d.indegree(2) == 2


def test_circulant_example():
    g = make_named("circulant", 8, [1, 3])
    assert expand_connection_set(8, [1, 3]) == {1, 3, 5, 7}
    s = structure_summary(g)
    assert (g.n, g.edge_count) == (8, 16)
    assert s.is_triangle_free
    # closure: no a, b in C with a + b in C (mod 8)
    conn = expand_connection_set(8, [1, 3])
    assert not any((a + b) % 8 in conn for a in conn for b in conn)


def test_named_families():
    k23 = make_named("complete_bipartite", 2, 3)
    assert (k23.n, k23.edge_count) == (5, 6)
    u = make_named("disjoint_union", make_named("complete", 3), make_named("complete", 2))
    assert (u.n, u.edge_count) == (5, 4)
    assert components(u) == [(0, 1, 2), (3, 4)]
    ds = make_named("double_star", 2, 3)
    assert sorted(ds.degree(v) for v in range(ds.n)) == [1, 1, 1, 1, 1, 3, 4]
    assert make_named("star", 3).degree(0) == 3


@pytest.mark.parametrize("args", [
    ("circulant", 8, []),
    ("circulant", 8, [5]),
    ("cycle", 2),
    ("path", -1),
    ("nonsense", 3),
    ("complete_bipartite", 3),
])
def test_family_errors(args):
    with pytest.raises(FamilyError):
        make_named(*args)


def test_family_cap():
    with pytest.raises(NodeCapError):
        make_named("complete", 32)


def test_structure_summary_examples():
    assert structure_summary(make_named("complete_bipartite", 2, 3)).induced_3path_count == 9
    k3 = structure_summary(make_named("complete", 3))
    assert (k3.triangle_count, k3.induced_3path_count) == (1, 0)
    p = structure_summary(make_named("path", 3))
    assert p.induced_3path_count == 1 and p.is_triangle_free
    assert p.degree_sequence == (2, 1, 1)


@pytest.mark.parametrize("p", range(2, 13))
def test_balanced_bipartite_3path_count(p):
    g = make_named("complete_bipartite", p // 2, (p + 1) // 2)
    expected = (p // 2) * ((p + 1) // 2) * (p - 2) / 2
    assert structure_summary(g).induced_3path_count == expected


def brute_triangles_and_3paths(g):
    tri = sum(1 for a, b, c in combinations(range(g.n), 3)
              if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c))
    paths = sum(1 for z in range(g.n) for x, y in combinations(g.neighbors(z), 2) if not g.has_edge(x, y))
    return tri, paths


@given(skeletons(max_n=9))
def test_structure_counts_match_brute_force(g):
    s = structure_summary(g)
    assert (s.triangle_count, s.induced_3path_count) == brute_triangles_and_3paths(g)
    assert sum(s.degree_sequence) == 2 * s.edge_count
    assert sorted(v for comp in s.component_list for v in comp) == list(range(g.n))


@given(skeletons(max_n=5), skeletons(max_n=5))
def test_disjoint_union_components(a, b):
    u = disjoint_union(a, b)
    sizes = sorted(len(c) for c in components(u))
    assert sizes == sorted([len(c) for c in components(a)] + [len(c) for c in components(b)])


@pytest.mark.parametrize("g, count", [
    (make_named("path", 3), 4),
    (make_named("complete", 3), 6),
    (make_named("cycle", 4), 14),
])
def test_acyclic_orientation_count_examples(g, count):
    assert acyclic_orientation_count(g) == count


def test_c4_chromatic_polynomial():
    # (k-1)^4 + (k-1) = k^4 - 4k^3 + 6k^2 - 3k
    assert chromatic_polynomial(make_named("cycle", 4)) == [0, -3, 6, -4, 1]


def brute_acyclic(g):
    edges = g.edges()
    total = 0
    for flips in product((0, 1), repeat=len(edges)):
        parents = [0] * g.n
        for (u, v), f in zip(edges, flips):
            if f:
                parents[u] |= 1 << v
            else:
                parents[v] |= 1 << u
        total += topological_order(parents) is not None
    return total


@settings(max_examples=60, deadline=None)
@given(skeletons(max_n=7, max_edges=14))
def test_acyclic_count_matches_filter_oracle(g):
    assert acyclic_orientation_count(g) == brute_acyclic(g)


def test_chromatic_polynomial_proper_colourings():
    # chi(k) counts proper k-colourings; compare at k = 3 by brute force
    g = make_named("circulant", 7, [1, 2])
    coeffs = chromatic_polynomial(g)
    value = sum(c * 3 ** i for i, c in enumerate(coeffs))
    brute = sum(1 for col in product(range(3), repeat=g.n) if all(col[u] != col[v] for u, v in g.edges()))
    assert value == brute


def test_acyclic_count_budget():
    with pytest.raises(BudgetExceeded):
        acyclic_orientation_count(make_named("circulant", 12, [1, 2, 3]), max_calls=10)
