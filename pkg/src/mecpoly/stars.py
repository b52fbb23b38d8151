"""Star decompositions, vertex covers, and immorality numbers computed from them.

A star decomposition partitions the edges of a graph into stars.  Its centre
set is always a vertex cover.  A DAG induces one by collecting each node's
incoming edges.  For triangle-free skeletons the immorality count of a DAG
is the sum of C(|S|, 2) over the stars it induces, which ties the maximum
immorality problem to minimum vertex cover.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb, gcd
from typing import Iterator, Sequence

from .errors import (
    BudgetExceeded, DagifyError, FamilyError, HypothesisViolation, NodeCapError,
    NotACover, NotMaximal, NotTriangleFree,
)
from .graph_core import (
    NODE_CAP, Dag, Skeleton, expand_connection_set, iter_bits, make_named, popcount, triangle_count,
)
from .orientations import DEFAULT_BUDGET, iter_parent_masks

DEFAULT_DECOMPOSITION_BUDGET = 1 << 20


@dataclass(frozen=True)
class Star:
    center: int
    leaves: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.leaves)

    @property
    def trivial(self) -> bool:
        return not self.leaves

    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset((min(self.center, x), max(self.center, x)) for x in self.leaves)

    def to_dict(self) -> dict:
        return {"center": self.center, "leaves": sorted(self.leaves)}


@dataclass(frozen=True)
class StarDecomposition:
    host: Skeleton
    stars: tuple[Star, ...]

    def __post_init__(self):
        seen: set[tuple[int, int]] = set()
        for s in self.stars:
            if s.center in s.leaves:
                raise ValueError(f"star at {s.center} lists its own centre as a leaf")
            for x in s.leaves:
                if not self.host.has_edge(s.center, x):
                    raise ValueError(f"leaf {x} not adjacent to centre {s.center}")
            for e in s.edges():
                if e in seen:
                    raise ValueError(f"edge {e} lies in two stars")
                seen.add(e)
        missing = set(self.host.edges()) - seen
        if missing:
            raise ValueError(f"edges {sorted(missing)} are in no star")

    @property
    def centers(self) -> frozenset[int]:
        return frozenset(s.center for s in self.stars)

    def __len__(self):
        return len(self.stars)

    def sizes(self) -> list[int]:
        return sorted((s.size for s in self.stars), reverse=True)

    def weight(self) -> int:
        """Squared length of the size vector."""
        return sum(s.size ** 2 for s in self.stars)

    def immorality_sum(self) -> int:
        return sum(comb(s.size, 2) for s in self.stars)

    def edge_partition(self) -> frozenset[frozenset[tuple[int, int]]]:
        """The decomposition as a set of edge sets, forgetting which endpoint
        of a single-edge star is called the centre."""
        return frozenset(s.edges() for s in self.stars if not s.trivial)

    def to_dict(self) -> dict:
        return {
            "centers": sorted(self.centers),
            "stars": [s.to_dict() for s in self.stars],
        }


@dataclass(frozen=True)
class VertexCover:
    host: Skeleton
    nodes: frozenset[int]

    def __post_init__(self):
        if not is_vertex_cover(self.host, self.nodes):
            raise NotACover(f"{sorted(self.nodes)} is not a vertex cover")

    def __len__(self):
        return len(self.nodes)

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.nodes))


def is_vertex_cover(g: Skeleton, nodes) -> bool:
    nodes = set(nodes)
    return all(u in nodes or v in nodes for u, v in g.edges())


# --------------------------------------------------------------------------
# vertex covers

def minimum_vertex_covers(g: Skeleton, cap: int = NODE_CAP) -> list[VertexCover]:
    """Every minimum vertex cover, sorted by node tuple.

    Branches on the lowest uncovered node u: either u is in the cover, or u is
    out and all of its neighbours are in.  The two branches are disjoint, so
    every cover is reached at most once.
    """
    if g.n > cap:
        raise NodeCapError(f"{g.n} nodes exceeds cap {cap}")
    rows = g.rows
    best = [g.n]
    found: list[int] = []

    def search(inside: int, outside: int, size: int):
        if size > best[0]:
            return
        # lowest node with an edge not yet covered
        u = -1
        for v in range(g.n):
            if not (inside >> v & 1) and rows[v] & ~inside:
                u = v
                break
        if u < 0:
            if size < best[0]:
                best[0] = size
                found.clear()
            found.append(inside)
            return
        search(inside | 1 << u, outside, size + 1)
        forced = rows[u] & ~inside
        if not forced & outside:
            search(inside | forced, outside | 1 << u, size + popcount(forced))

    search(0, 0, 0)
    covers = sorted({tuple(iter_bits(m)) for m in found if popcount(m) == best[0]})
    return [VertexCover(g, frozenset(c)) for c in covers]


def minimum_vertex_cover_size(g: Skeleton) -> int:
    return len(minimum_vertex_covers(g)[0])


# --------------------------------------------------------------------------
# decompositions

def decomposition_from_cover(g: Skeleton, c: VertexCover | Sequence[int],
                             center_order: Sequence[int] | None = None) -> StarDecomposition:
    """Stars centred on the cover, each edge going to its earliest covering centre.

    ``center_order`` defaults to increasing label.  Centres whose edges were
    all claimed earlier keep a trivial star.
    """
    nodes = set(c.nodes if isinstance(c, VertexCover) else c)
    if not is_vertex_cover(g, nodes):
        raise NotACover(f"{sorted(nodes)} is not a vertex cover")
    order = list(center_order) if center_order is not None else sorted(nodes)
    if sorted(order) != sorted(nodes):
        raise ValueError("center_order must be a permutation of the cover")
    claimed = 0
    stars = []
    for ci in order:
        leaves = g.rows[ci] & ~claimed
        stars.append(Star(ci, frozenset(iter_bits(leaves))))
        claimed |= 1 << ci
    return StarDecomposition(g, tuple(stars))


def induced_decomposition(d: Dag) -> StarDecomposition:
    """One star per node: centre v, leaves the tails of arcs into v."""
    return StarDecomposition(
        d.skeleton,
        tuple(Star(v, frozenset(iter_bits(d.parents[v]))) for v in range(d.skeleton.n)),
    )


def reduce(s: StarDecomposition) -> StarDecomposition:
    return StarDecomposition(s.host, tuple(st for st in s.stars if not st.trivial))


def size_vector(s: StarDecomposition, m: int) -> tuple[int, ...]:
    sizes = [st.size for st in s.stars if not st.trivial]
    if m < len(sizes):
        raise ValueError(f"target length {m} is shorter than {len(sizes)} nontrivial stars")
    return tuple(sorted(sizes, reverse=True) + [0] * (m - len(sizes)))


def _descendants(parents: Sequence[int]) -> list[int]:
    n = len(parents)
    children = [0] * n
    for v, p in enumerate(parents):
        for u in iter_bits(p):
            children[u] |= 1 << v
    desc = children[:]
    changed = True
    while changed:
        changed = False
        for v in range(n):
            acc = desc[v]
            for w in iter_bits(desc[v]):
                acc |= desc[w]
            if acc != desc[v]:
                desc[v] = acc
                changed = True
    return desc


def dagify(s: StarDecomposition) -> Dag:
    """Turn a star decomposition into a DAG by repeatedly creating sinks.

    Start by pointing every star's edges at its centre.  While a directed
    cycle remains, take the highest-degree node lying on a cycle (lowest
    label on ties) outside the closed neighbourhoods of earlier picks, and
    reorient all its edges inward.
    """
    g = s.host
    parents = [0] * g.n
    for st in s.stars:
        for x in st.leaves:
            parents[st.center] |= 1 << x
    excluded = 0
    while True:
        desc = _descendants(parents)
        on_cycle = [v for v in range(g.n) if desc[v] >> v & 1]
        if not on_cycle:
            return Dag(g, parents)
        candidates = [v for v in on_cycle if not excluded >> v & 1]
        if not candidates:
            raise DagifyError(
                f"cycle nodes {on_cycle} all lie in excluded neighbourhoods"
            )
        v = min(candidates, key=lambda x: (-g.degree(x), x))
        parents[v] = g.rows[v]
        for w in iter_bits(g.rows[v]):
            parents[w] &= ~(1 << v)
        excluded |= g.closed_neighborhood(v)


def is_induced_by_some_dag(s: StarDecomposition, budget: int | None = DEFAULT_BUDGET) -> bool:
    """Exhaustive check: does some DAG's reduced induced decomposition equal ``reduce(s)``?

    Decompositions are compared as edge partitions, so a single-edge star
    matches whichever endpoint the DAG points it at.
    """
    g = s.host
    target = s.edge_partition()
    for parents in iter_parent_masks(g, budget):
        part = frozenset(
            frozenset((min(v, x), max(v, x)) for x in iter_bits(p))
            for v, p in enumerate(parents) if p
        )
        if part == target:
            return True
    return False


def enumerate_min_star_decompositions(g: Skeleton,
                                      budget: int | None = DEFAULT_DECOMPOSITION_BUDGET,
                                      ) -> Iterator[StarDecomposition]:
    """Every minimum star decomposition, as (minimum cover, edge assignment) pairs.

    Edges with one endpoint in the cover are forced; edges inside the cover go
    to either endpoint.  Centres are listed in increasing label order.
    """
    count = 0
    for cover in minimum_vertex_covers(g):
        nodes = cover.nodes
        base = {c: set() for c in sorted(nodes)}
        inner = []
        for u, v in g.edges():
            if u in nodes and v in nodes:
                inner.append((u, v))
            elif u in nodes:
                base[u].add(v)
            else:
                base[v].add(u)
        for choice in product((0, 1), repeat=len(inner)):
            leaves = {c: set(ls) for c, ls in base.items()}
            for (u, v), pick in zip(inner, choice):
                if pick:
                    leaves[v].add(u)
                else:
                    leaves[u].add(v)
            # a centre left without edges would give a smaller cover
            if any(not ls for ls in leaves.values()):
                continue
            count += 1
            if budget is not None and count > budget:
                raise BudgetExceeded("minimum star decompositions", budget, count - 1)
            yield StarDecomposition(g, tuple(Star(c, frozenset(ls)) for c, ls in leaves.items()))


# --------------------------------------------------------------------------
# immorality numbers from star decompositions

@dataclass(frozen=True)
class Theorem3Result:
    """``applicable`` is None when the decomposition budget ran out."""

    applicable: bool | None
    value: int | None
    witness: StarDecomposition | None
    reason: str = ""


def theorem3_immorality_number(g: Skeleton,
                               budget: int | None = DEFAULT_DECOMPOSITION_BUDGET) -> Theorem3Result:
    """Sum of C(|S|, 2) over a minimum star decomposition.

    Only offered when ``g`` is triangle-free and all minimum decompositions
    have the same size multiset, which for star forests is the same as
    being isomorphic.
    """
    if triangle_count(g):
        return Theorem3Result(False, None, None, "graph has a triangle")
    shapes = set()
    witness = None
    try:
        for dec in enumerate_min_star_decompositions(g, budget):
            shapes.add(tuple(dec.sizes()))
            if witness is None:
                witness = dec
            if len(shapes) > 1:
                return Theorem3Result(False, None, None, "minimum star decompositions are not all isomorphic")
    except BudgetExceeded as exc:
        return Theorem3Result(None, None, None, str(exc))
    if witness is None:
        # edgeless graph: the empty decomposition
        witness = StarDecomposition(g, ())
    return Theorem3Result(True, witness.immorality_sum(), witness)


def _circulant_value(p: int, conn: Sequence[int]) -> int:
    if p % 2:
        raise HypothesisViolation("p even", f"p = {p}")
    full = expand_connection_set(p, conn)
    g = make_named("circulant", p, list(conn), cap=max(NODE_CAP, p))
    if triangle_count(g):
        raise HypothesisViolation("triangle-free", f"X({p},{sorted(conn)}) has a triangle")
    if not any(gcd(c, p) == 1 for c in full):
        raise HypothesisViolation("contains a p-cycle", "no connection element is a unit mod p")
    alpha = p - minimum_vertex_cover_size(g)
    if alpha != p // 2:
        raise HypothesisViolation("maximum independent set of size p/2", f"found {alpha}")
    # every node's star is its full neighbourhood; the degree is |full|,
    # which is 2|C| unless p/2 is in C
    return p // 2 * comb(len(full), 2)


def closed_form_immorality_number(family: str, *params) -> int:
    """Known immorality numbers for stars, K_{2,p}, K_{p,p}, S_2(p,p) and
    triangle-free circulants.  Circulant hypotheses are checked, not assumed."""
    if family == "star":
        (p,) = params
        return comb(p, 2)
    if family == "complete_bipartite":
        p, q = params
        if p == 1 or q == 1:
            return comb(max(p, q), 2)
        if p == 2 or q == 2:
            return 2 * comb(q if p == 2 else p, 2)
        if p == q:
            return p * comb(p, 2)
        raise FamilyError(f"no closed form for K_{{{p},{q}}}")
    if family == "double_star":
        p, q = params
        if p != q:
            raise HypothesisViolation("p == q", f"S_2({p},{q}) has nonisomorphic minimum decompositions")
        return comb(p + 1, 2) + comb(p, 2)
    if family == "circulant":
        p, conn = params
        return _circulant_value(p, conn)
    raise FamilyError(f"no closed form for family {family!r}")


def vertex_cover_from_max_immorality_dag(g: Skeleton, d: Dag, m: int | None = None) -> VertexCover:
    """Centre set of the reduced decomposition induced by a maximum-immorality DAG.

    ``m`` is the immorality number of ``g``; computed by census if omitted.
    """
    from .census import census, immorality_count

    if triangle_count(g):
        raise NotTriangleFree("skeleton has a triangle")
    if d.skeleton != g:
        raise ValueError("DAG is on a different skeleton")
    if m is None:
        m = census(g).polynomial.degree
    got = immorality_count(d)
    if got != m:
        raise NotMaximal(f"DAG has {got} immoralities, immorality number is {m}")
    return VertexCover(g, reduce(induced_decomposition(d)).centers)
