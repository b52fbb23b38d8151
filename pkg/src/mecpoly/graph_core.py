"""Undirected skeletons, DAGs on them, graph6 I/O and structural statistics.

Graphs are small (at most ``NODE_CAP`` nodes) and stored as tuples of
adjacency bitmasks, one machine-word-sized int per node.  Both
:class:`Skeleton` and :class:`Dag` are immutable.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import (
    BudgetExceeded, FamilyError, Graph6Error, Graph6HeaderError, Graph6PaddingError,
    Graph6TrailingError, Graph6TruncatedError, NodeCapError,
)

NODE_CAP = 31

_GRAPH6_HEADER = ">>graph6<<"


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Skeleton:
    """Undirected simple graph on nodes ``0..n-1``.

    ``rows[v]`` is the bitmask of neighbours of ``v``.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("node count must be nonnegative")
        if len(self.rows) != self.n:
            raise ValueError("need exactly one adjacency row per node")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise ValueError(f"row {v} refers to nodes outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at node {v}")
            for u in iter_bits(row):
                if not self.rows[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], cap: int = NODE_CAP) -> "Skeleton":
        if n > cap:
            raise NodeCapError(f"{n} nodes exceeds cap {cap}")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} nodes")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Skeleton":
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def edges(self) -> list[tuple[int, int]]:
        """Edges in canonical order: lexicographic on (min endpoint, max endpoint)."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    def closed_neighborhood(self, v: int) -> int:
        return self.rows[v] | (1 << v)

    def induced(self, nodes: Sequence[int]) -> "Skeleton":
        """Induced subgraph, relabelled to ``0..len(nodes)-1`` in the given order."""
        index = {v: i for i, v in enumerate(nodes)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Skeleton.from_edges(len(nodes), edges)

    def __repr__(self):
        return f"Skeleton(n={self.n}, edges={self.edges()})"


class Dag:
    """An acyclic orientation of a skeleton.

    ``parents[v]`` is the bitmask of in-neighbours of ``v``.  The constructor
    checks the orientation invariants; enumeration code that already
    guarantees them should use :meth:`trusted`.
    """

    __slots__ = ("skeleton", "parents")

    def __init__(self, skeleton: Skeleton, parents: Sequence[int]):
        parents = tuple(parents)
        if len(parents) != skeleton.n:
            raise ValueError("need one parent set per node")
        for v, pmask in enumerate(parents):
            if pmask & ~skeleton.rows[v]:
                raise ValueError(f"node {v} has a parent that is not a neighbour")
            for u in iter_bits(pmask):
                if parents[u] >> v & 1:
                    raise ValueError(f"edge ({u}, {v}) oriented both ways")
        for u, v in skeleton.edges():
            if not (parents[v] >> u & 1 or parents[u] >> v & 1):
                raise ValueError(f"edge ({u}, {v}) left unoriented")
        if topological_order(parents) is None:
            raise ValueError("orientation contains a directed cycle")
        self.skeleton = skeleton
        self.parents = parents

    @classmethod
    def trusted(cls, skeleton: Skeleton, parents: tuple[int, ...]) -> "Dag":
        d = object.__new__(cls)
        d.skeleton = skeleton
        d.parents = parents
        return d

    @classmethod
    def from_arcs(cls, skeleton: Skeleton, arcs: Iterable[tuple[int, int]]) -> "Dag":
        """Build from (tail, head) pairs covering every skeleton edge."""
        parents = [0] * skeleton.n
        for u, v in arcs:
            parents[v] |= 1 << u
        return cls(skeleton, parents)

    def arcs(self) -> list[tuple[int, int]]:
        return sorted((u, v) for v in range(self.skeleton.n) for u in iter_bits(self.parents[v]))

    def parent_list(self, v: int) -> list[int]:
        return list(iter_bits(self.parents[v]))

    def indegree(self, v: int) -> int:
        return popcount(self.parents[v])

    def topological_order(self) -> list[int]:
        order = topological_order(self.parents)
        assert order is not None
        return order

    def __eq__(self, other):
        return isinstance(other, Dag) and self.skeleton == other.skeleton and self.parents == other.parents

    def __hash__(self):
        return hash((self.skeleton, self.parents))

    def __repr__(self):
        return f"Dag({self.arcs()})"


def topological_order(parents: Sequence[int]) -> list[int] | None:
    """Kahn's algorithm on parent bitmasks; ``None`` if there is a directed cycle."""
    n = len(parents)
    children = [0] * n
    for v, pmask in enumerate(parents):
        for u in iter_bits(pmask):
            children[u] |= 1 << v
    indeg = [popcount(p) for p in parents]
    ready = [v for v in range(n) if indeg[v] == 0]
    order = []
    while ready:
        u = ready.pop()
        order.append(u)
        for w in iter_bits(children[u]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return order if len(order) == n else None


# --------------------------------------------------------------------------
# graph6

def parse_graph6(text: str, cap: int = NODE_CAP) -> Skeleton:
    """Decode one graph6 record (short form, up to 62 nodes)."""
    s = text.strip()
    if s.startswith(_GRAPH6_HEADER):
        s = s[len(_GRAPH6_HEADER):]
    if not s:
        raise Graph6Error("empty graph6 record")
    if not 63 <= ord(s[0]) <= 126:
        raise Graph6HeaderError(f"header byte {s[0]!r} outside the graph6 range")
    for pos, ch in enumerate(s[1:], start=1):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"payload byte {ch!r} at position {pos} outside the graph6 range")
    if s[0] == "~":
        raise Graph6HeaderError("long-form graph6 header (n >= 63) is not supported")
    n = ord(s[0]) - 63
    if n > cap:
        raise NodeCapError(f"graph6 record has {n} nodes, cap is {cap}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    payload = s[1:]
    if len(payload) < nbytes:
        raise Graph6TruncatedError(f"truncated payload: expected {nbytes} bytes, got {len(payload)}")
    if len(payload) > nbytes:
        raise Graph6TrailingError(f"trailing garbage after {nbytes} payload bytes")
    value = 0
    for ch in payload:
        value = value << 6 | (ord(ch) - 63)
    pad = nbytes * 6 - nbits
    if value & ((1 << pad) - 1):
        raise Graph6PaddingError("nonzero padding bits")
    value >>= pad

    rows = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Skeleton(n, tuple(rows))


def encode_graph6(g: Skeleton) -> str:
    if g.n > 62:
        raise NodeCapError(f"short-form graph6 holds at most 62 nodes, got {g.n}")
    bits = [g.rows[i] >> j & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        chunk = 0
        for b in bits[k:k + 6]:
            chunk = chunk << 1 | b
        out.append(chr(chunk + 63))
    return "".join(out)


# --------------------------------------------------------------------------
# named families

FAMILIES = (
    "empty", "path", "cycle", "star", "complete", "complete_bipartite",
    "double_star", "circulant", "disjoint_union",
)


def disjoint_union(*graphs: Skeleton, cap: int = NODE_CAP) -> Skeleton:
    """Union with the i-th operand's nodes shifted past all earlier operands."""
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Skeleton.from_edges(offset, edges, cap=cap)


def expand_connection_set(p: int, abbreviated: Iterable[int]) -> frozenset[int]:
    """Close an abbreviated circulant connection set under additive inverse mod p."""
    conn = set()
    for c in abbreviated:
        if not 1 <= c <= p // 2:
            raise FamilyError(f"connection element {c} outside 1..{p // 2}")
        conn.add(c % p)
        conn.add(-c % p)
    if not conn:
        raise FamilyError("empty connection set")
    return frozenset(conn)


def make_named(family: str, *params, cap: int = NODE_CAP) -> Skeleton:
    """Construct a graph from a named family.

    ``star`` p is K_{1,p} with centre 0.  ``double_star`` p, q joins centres
    0 and 1, then hangs p leaves on 0 and q leaves on 1.  ``circulant`` takes
    p and an abbreviated connection set.  ``disjoint_union`` takes Skeletons.
    """
    if family == "disjoint_union":
        if not params or not all(isinstance(g, Skeleton) for g in params):
            raise FamilyError("disjoint_union needs Skeleton operands")
        return disjoint_union(*params, cap=cap)
    if family == "circulant":
        if len(params) != 2:
            raise FamilyError("circulant needs p and a connection set")
        p, conn = params
        _check_int_params(family, (p,), minimum=1)
        full = expand_connection_set(p, conn)
        _check_cap(p, cap)
        return Skeleton.from_edges(p, {(min(i, (i + c) % p), max(i, (i + c) % p)) for i in range(p) for c in full})

    arity = {"empty": 1, "path": 1, "cycle": 1, "star": 1, "complete": 1,
             "complete_bipartite": 2, "double_star": 2}
    if family not in arity:
        raise FamilyError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if len(params) != arity[family]:
        raise FamilyError(f"{family} takes {arity[family]} integer parameter(s)")
    _check_int_params(family, params, minimum=0)

    if family == "empty":
        (n,) = params
        _check_cap(n, cap)
        return Skeleton.empty(n)
    if family == "path":
        (n,) = params
        _check_cap(n, cap)
        return Skeleton.from_edges(n, [(i, i + 1) for i in range(n - 1)], cap=cap)
    if family == "cycle":
        (n,) = params
        if n < 3:
            raise FamilyError("a cycle needs at least 3 nodes")
        _check_cap(n, cap)
        return Skeleton.from_edges(n, [(i, (i + 1) % n) for i in range(n)], cap=cap)
    if family == "star":
        (p,) = params
        _check_cap(p + 1, cap)
        return Skeleton.from_edges(p + 1, [(0, i) for i in range(1, p + 1)], cap=cap)
    if family == "complete":
        (n,) = params
        _check_cap(n, cap)
        return Skeleton.from_edges(n, combinations(range(n), 2), cap=cap)
    if family == "complete_bipartite":
        p, q = params
        _check_cap(p + q, cap)
        return Skeleton.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)], cap=cap)
    # double_star
    p, q = params
    _check_cap(p + q + 2, cap)
    edges = [(0, 1)] + [(0, 2 + i) for i in range(p)] + [(1, 2 + p + j) for j in range(q)]
    return Skeleton.from_edges(p + q + 2, edges, cap=cap)


def _check_int_params(family, params, minimum):
    for x in params:
        if not isinstance(x, int) or x < minimum:
            raise FamilyError(f"{family}: parameter {x!r} must be an integer >= {minimum}")


def _check_cap(n, cap):
    if n > cap:
        raise NodeCapError(f"{n} nodes exceeds cap {cap}")


# --------------------------------------------------------------------------
# structure

@dataclass(frozen=True)
class StructureSummary:
    degree_sequence: tuple[int, ...]
    edge_count: int
    triangle_count: int
    induced_3path_count: int
    is_triangle_free: bool
    is_connected: bool
    component_list: tuple[tuple[int, ...], ...]


def components(g: Skeleton) -> list[tuple[int, ...]]:
    """Connected components as sorted node tuples, ordered by smallest node."""
    seen = 0
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(tuple(iter_bits(comp)))
    return comps


def triangle_count(g: Skeleton) -> int:
    total = 0
    for u, v in g.edges():
        total += popcount(g.rows[u] & g.rows[v] & ~((1 << (v + 1)) - 1))
    return total


def induced_3path_count(g: Skeleton) -> int:
    """Number of unordered triples x - z - y with x, y nonadjacent."""
    total = 0
    for z in range(g.n):
        nbrs = g.neighbors(z)
        deg = len(nbrs)
        adjacent_pairs = sum(popcount(g.rows[x] & g.rows[z]) for x in nbrs) // 2
        total += comb(deg, 2) - adjacent_pairs
    return total


def structure_summary(g: Skeleton) -> StructureSummary:
    comps = components(g)
    tri = triangle_count(g)
    return StructureSummary(
        degree_sequence=tuple(sorted((g.degree(v) for v in range(g.n)), reverse=True)),
        edge_count=g.edge_count,
        triangle_count=tri,
        induced_3path_count=induced_3path_count(g),
        is_triangle_free=tri == 0,
        is_connected=len(comps) <= 1,
        component_list=tuple(comps),
    )


# --------------------------------------------------------------------------
# chromatic polynomial / acyclic orientation count

def _padd(a, b, sign=1):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += sign * c
    return out


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _falling_factorial(n):
    # k (k-1) ... (k-n+1)
    poly = [1]
    for i in range(n):
        poly = _pmul(poly, [-i, 1])
    return poly


def chromatic_polynomial(g: Skeleton, max_calls: int = 2_000_000) -> list[int]:
    """Coefficients (constant term first) of the chromatic polynomial.

    Plain deletion-contraction with memoisation on the adjacency rows,
    short-circuiting edgeless graphs, cliques, trees and disconnected graphs.
    """
    memo: dict[tuple[int, ...], list[int]] = {}
    calls = 0

    def solve(rows: tuple[int, ...]) -> list[int]:
        nonlocal calls
        calls += 1
        if calls > max_calls:
            raise BudgetExceeded("deletion-contraction calls", max_calls, calls)
        n = len(rows)
        # isolated nodes contribute a factor k each
        isolated = sum(1 for r in rows if r == 0)
        if isolated:
            keep = [v for v in range(n) if rows[v]]
            base = [0] * isolated + [1]
            return _pmul(base, solve(_relabel(rows, keep)) if keep else [1])
        if n == 0:
            return [1]
        if rows in memo:
            return memo[rows]
        edges = sum(popcount(r) for r in rows) // 2
        if edges == n * (n - 1) // 2:
            res = _falling_factorial(n)
        else:
            sk = Skeleton(n, rows)
            comps = components(sk)
            if len(comps) > 1:
                res = [1]
                for comp in comps:
                    res = _pmul(res, solve(_relabel(rows, list(comp))))
            elif edges == n - 1:
                # tree: k (k-1)^(n-1)
                res = [0, 1]
                for _ in range(n - 1):
                    res = _pmul(res, [-1, 1])
            else:
                # branch on an edge at a minimum-degree node
                u = min(range(n), key=lambda v: popcount(rows[v]))
                v = next(iter_bits(rows[u]))
                deleted = list(rows)
                deleted[u] &= ~(1 << v)
                deleted[v] &= ~(1 << u)
                res = _padd(solve(tuple(deleted)), solve(_contract(rows, u, v)), sign=-1)
        memo[rows] = res
        return res

    poly = solve(g.rows)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def _relabel(rows, keep):
    index = {v: i for i, v in enumerate(keep)}
    out = []
    for v in keep:
        r = 0
        for w in iter_bits(rows[v]):
            if w in index:
                r |= 1 << index[w]
        out.append(r)
    return tuple(out)


def _contract(rows, u, v):
    """Merge ``v`` into ``u`` (parallel edges collapse), then drop ``v``."""
    merged = list(rows)
    merged[u] = (rows[u] | rows[v]) & ~(1 << u) & ~(1 << v)
    for w in iter_bits(rows[v]):
        if w != u:
            merged[w] = (merged[w] & ~(1 << v)) | (1 << u)
    merged[v] = 0
    keep = [w for w in range(len(rows)) if w != v]
    index = {w: i for i, w in enumerate(keep)}
    out = []
    for w in keep:
        r = 0
        for x in iter_bits(merged[w]):
            r |= 1 << index[x]
        out.append(r)
    return tuple(out)


def evaluate_polynomial(coeffs: Sequence[int], x: int) -> int:
    return reduce(lambda acc, c: acc * x + c, reversed(coeffs), 0)


def acyclic_orientation_count(g: Skeleton, max_calls: int = 2_000_000) -> int:
    """Number of acyclic orientations, |chi_G(-1)| (Stanley)."""
    return abs(evaluate_polynomial(chromatic_polynomial(g, max_calls=max_calls), -1))
