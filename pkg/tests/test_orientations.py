import pytest
from hypothesis import given, settings

from mecpoly.errors import BudgetExceeded
from mecpoly.graph_core import Dag, acyclic_orientation_count, disjoint_union, make_named, topological_order
from mecpoly.orientations import brute_force_orientations, enumerate_acyclic_orientations, iter_parent_masks
from strategies import skeletons


@pytest.mark.parametrize("g, count", [
    (make_named("path", 3), 4),
    (make_named("complete", 3), 6),
    (make_named("cycle", 4), 14),
    (make_named("path", 2), 2),
])
def test_counts(g, count):
    assert sum(1 for _ in enumerate_acyclic_orientations(g)) == count
    assert sum(1 for _ in brute_force_orientations(g)) == count


def test_every_yield_is_a_valid_dag():
    g = make_named("circulant", 7, [1, 2])
    seen = set()
    for d in enumerate_acyclic_orientations(g):
        Dag(g, d.parents)  # re-validates all invariants
        seen.add(d.parents)
    assert len(seen) == acyclic_orientation_count(g)


def test_deterministic_order():
    g = make_named("complete_bipartite", 2, 3)
    assert list(iter_parent_masks(g)) == list(iter_parent_masks(g))


def test_trivial_graphs():
    assert [d.parents for d in enumerate_acyclic_orientations(make_named("empty", 0))] == [()]
    assert [d.parents for d in enumerate_acyclic_orientations(make_named("empty", 3))] == [(0, 0, 0)]


def test_budget_reports_count_reached():
    g = make_named("complete", 5)
    stream = enumerate_acyclic_orientations(g, budget=100)
    with pytest.raises(BudgetExceeded) as info:
        for _ in stream:
            pass
    assert info.value.reached == 100


def test_budget_exactly_met_is_fine():
    assert sum(1 for _ in iter_parent_masks(make_named("complete", 4), budget=24)) == 24


def test_unbounded_budget():
    assert sum(1 for _ in iter_parent_masks(make_named("complete", 4), budget=None)) == 24


def test_brute_force_edge_cap():
    with pytest.raises(BudgetExceeded):
        next(brute_force_orientations(make_named("complete", 7)))


@settings(max_examples=80, deadline=None)
@given(skeletons(max_n=8, max_edges=14))
def test_matches_brute_force(g):
    fast = [d.parents for d in enumerate_acyclic_orientations(g)]
    assert len(fast) == len(set(fast))
    assert set(fast) == {d.parents for d in brute_force_orientations(g)}
    assert len(fast) == acyclic_orientation_count(g)
    assert all(topological_order(p) is not None for p in fast)


@settings(max_examples=30, deadline=None)
@given(skeletons(max_n=4), skeletons(max_n=4))
def test_disjoint_union_count_multiplies(a, b):
    count = lambda g: sum(1 for _ in iter_parent_masks(g))
    assert count(disjoint_union(a, b)) == count(a) * count(b)
