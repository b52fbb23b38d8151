"""Shared hypothesis strategies and small graph helpers for the tests."""
import random
from itertools import combinations

from hypothesis import strategies as st

from mecpoly.graph_core import Skeleton, components, triangle_count


@st.composite
def skeletons(draw, min_n=1, max_n=7, max_edges=None):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = [p for p in pairs if draw(st.booleans())]
    if max_edges is not None and len(chosen) > max_edges:
        chosen = draw(st.permutations(chosen))[:max_edges]
    return Skeleton.from_edges(n, chosen)


def random_graph(rng: random.Random, n: int, p: float) -> Skeleton:
    return Skeleton.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_connected(rng: random.Random, max_n: int, min_n: int = 2) -> Skeleton:
    while True:
        n = rng.randint(min_n, max_n)
        g = random_graph(rng, n, rng.uniform(0.2, 0.8))
        if len(components(g)) == 1:
            return g


def random_triangle_free(rng: random.Random, max_n: int, min_n: int = 2) -> Skeleton:
    """Random triangle-free graph: add edges in random order, skipping any that close a triangle."""
    n = rng.randint(min_n, max_n)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    keep = rng.uniform(0.3, 1.0)
    rows = [0] * n
    edges = []
    for u, v in pairs:
        if rng.random() > keep or rows[u] & rows[v]:
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        edges.append((u, v))
    g = Skeleton.from_edges(n, edges)
    assert triangle_count(g) == 0
    return g


def random_decomposition(g: Skeleton, rng: random.Random):
    """Star decomposition from sending each edge to a random endpoint."""
    from mecpoly.stars import Star, StarDecomposition

    stars = {}
    for u, v in g.edges():
        c, leaf = (u, v) if rng.random() < 0.5 else (v, u)
        stars.setdefault(c, set()).add(leaf)
    return StarDecomposition(g, tuple(Star(c, frozenset(ls)) for c, ls in sorted(stars.items())))
