"""Enumeration of the acyclic orientations of a skeleton.

The enumerator adds vertices in label order.  When vertex ``k`` arrives, its
already-placed neighbours are split into parents and children.  A split is
admissible iff no child already reaches a parent, which is checked against
per-vertex descendant bitmasks.  Every acyclic partial orientation extends
to a full acyclic orientation, so the search has no dead ends and cyclic
orientations are never built.
"""
from __future__ import annotations

from itertools import product
from typing import Iterator

from .errors import BudgetExceeded
from .graph_core import Dag, Skeleton, iter_bits, topological_order

DEFAULT_BUDGET = 1 << 28
BRUTE_FORCE_EDGE_CAP = 20


def _submasks(mask: int) -> list[int]:
    """All submasks of ``mask`` in increasing numeric order."""
    subs = []
    s = 0
    while True:
        subs.append(s)
        if s == mask:
            return subs
        s = (s - mask) & mask


def iter_parent_masks(g: Skeleton, budget: int | None = DEFAULT_BUDGET) -> Iterator[tuple[int, ...]]:
    """Yield ``parents`` tuples for every acyclic orientation of ``g``.

    Order is deterministic for a fixed labelling.  Raises
    :class:`BudgetExceeded` before yielding item ``budget + 1``.
    """
    n = g.n
    if n == 0:
        yield ()
        return
    # earlier[k]: neighbours of k with smaller label
    earlier = [g.rows[k] & ((1 << k) - 1) for k in range(n)]
    splits = [_submasks(m) for m in earlier]
    parents = [0] * n
    # desc[v]: vertices reachable from v by a nonempty directed path
    desc = [0] * n
    count = 0
    limit = budget if budget is not None else -1

    def place(k: int) -> Iterator[tuple[int, ...]]:
        nonlocal count
        nbrs = earlier[k]
        last = k == n - 1
        for pset in splits[k]:
            cset = nbrs ^ pset
            # a child that already reaches a parent would close a cycle
            reach = cset
            ok = True
            for c in iter_bits(cset):
                dc = desc[c]
                if dc & pset:
                    ok = False
                    break
                reach |= dc
            if not ok:
                continue
            if last:
                count += 1
                if count == limit + 1:
                    raise BudgetExceeded("acyclic orientations", budget, count - 1)
                for c in iter_bits(cset):
                    parents[c] |= 1 << k
                parents[k] = pset
                yield tuple(parents)
                for c in iter_bits(cset):
                    parents[c] &= ~(1 << k)
                continue
            # ancestors of k: the parents and everything reaching them
            saved = desc[:]
            kbit = 1 << k
            gain = kbit | reach
            desc[k] = reach
            for v in range(k):
                if (1 << v) & pset or desc[v] & pset:
                    desc[v] |= gain
            for c in iter_bits(cset):
                parents[c] |= kbit
            parents[k] = pset
            yield from place(k + 1)
            for c in iter_bits(cset):
                parents[c] &= ~kbit
            desc[:] = saved
        parents[k] = 0

    yield from place(0)


def enumerate_acyclic_orientations(g: Skeleton, budget: int | None = DEFAULT_BUDGET) -> Iterator[Dag]:
    """Stream every acyclic orientation of ``g`` exactly once.

    ``budget=None`` means unbounded.
    """
    for parents in iter_parent_masks(g, budget):
        yield Dag.trusted(g, parents)


def brute_force_orientations(g: Skeleton, max_edges: int = BRUTE_FORCE_EDGE_CAP) -> Iterator[Dag]:
    """Test oracle: try all 2^|E| orientations and keep the acyclic ones."""
    edges = g.edges()
    if len(edges) > max_edges:
        raise BudgetExceeded("brute-force edge count", max_edges, len(edges))
    for flips in product((0, 1), repeat=len(edges)):
        parents = [0] * g.n
        for (u, v), f in zip(edges, flips):
            if f:
                parents[u] |= 1 << v
            else:
                parents[v] |= 1 << u
        if topological_order(parents) is not None:
            yield Dag.trusted(g, tuple(parents))
