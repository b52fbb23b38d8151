"""Group the DAGs on a skeleton into Markov equivalence classes.

Two DAGs on the same skeleton are Markov equivalent iff they have the same
immoralities, so each class is keyed by a fingerprint: a bit vector over
the skeleton's induced 3-paths (the only places an immorality can sit).
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Iterable, Sequence

from .errors import BudgetExceeded, IncompleteRecord, SkeletonMismatch
from .graph_core import Dag, Skeleton, StructureSummary, encode_graph6, popcount, structure_summary
from .orientations import DEFAULT_BUDGET, iter_parent_masks

# Per-node lookup tables are built only up to this degree; above it the
# fingerprint contribution is computed pair by pair.
_TABLE_DEGREE_CAP = 12


@dataclass(frozen=True)
class ImmoralityIndex:
    """Slots ``(x, z, y)``: x < y, both adjacent to z, x and y nonadjacent.

    Ordered lexicographically by ``(z, x, y)``.
    """

    skeleton: Skeleton
    slots: tuple[tuple[int, int, int], ...]

    def __len__(self):
        return len(self.slots)


def build_immorality_index(g: Skeleton) -> ImmoralityIndex:
    slots = []
    for z in range(g.n):
        nbrs = g.neighbors(z)
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1:]:
                if not g.has_edge(x, y):
                    slots.append((x, z, y))
    return ImmoralityIndex(g, tuple(slots))


@dataclass(frozen=True, order=True)
class MecFingerprint:
    """Bit vector over the slots of an :class:`ImmoralityIndex`.

    Stored as a tuple of 0/1 so that the natural ordering is lexicographic
    over slots.
    """

    bits: tuple[int, ...]

    @classmethod
    def from_mask(cls, mask: int, length: int) -> "MecFingerprint":
        return cls(tuple(mask >> i & 1 for i in range(length)))

    @property
    def mask(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))

    @property
    def popcount(self) -> int:
        return sum(self.bits)

    def to_string(self) -> str:
        return "".join(map(str, self.bits))


def _node_tables(idx: ImmoralityIndex):
    """For each centre z, a dict from parent bitmask to fingerprint bits."""
    g = idx.skeleton
    per_node: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for i, (x, z, y) in enumerate(idx.slots):
        per_node[z].append(((1 << x) | (1 << y), 1 << i))
    tables = []
    for z in range(g.n):
        pairs = per_node[z]
        if not pairs:
            tables.append(None)
            continue
        if g.degree(z) > _TABLE_DEGREE_CAP:
            tables.append(pairs)
            continue
        nbrs = g.rows[z]
        table = {}
        s = 0
        while True:
            bits = 0
            for pm, b in pairs:
                if s & pm == pm:
                    bits |= b
            table[s] = bits
            if s == nbrs:
                break
            s = (s - nbrs) & nbrs
        tables.append(table)
    return tables


def _fingerprint_mask(parents: Sequence[int], tables) -> int:
    fp = 0
    for z, t in enumerate(tables):
        if t is None:
            continue
        p = parents[z]
        if isinstance(t, dict):
            fp |= t[p]
        else:
            for pm, b in t:
                if p & pm == pm:
                    fp |= b
    return fp


def fingerprint_of(d: Dag, idx: ImmoralityIndex) -> MecFingerprint:
    if d.skeleton != idx.skeleton:
        raise SkeletonMismatch("DAG skeleton differs from the index skeleton")
    mask = 0
    for i, (x, z, y) in enumerate(idx.slots):
        p = d.parents[z]
        if p >> x & 1 and p >> y & 1:
            mask |= 1 << i
    return MecFingerprint.from_mask(mask, len(idx))


def immorality_count(d: Dag) -> int:
    """Nonadjacent parent pairs summed over all nodes."""
    g = d.skeleton
    total = 0
    for v in range(g.n):
        ps = d.parent_list(v)
        k = len(ps)
        adjacent = sum(popcount(g.rows[x] & d.parents[v]) for x in ps) // 2
        total += comb(k, 2) - adjacent
    return total


@dataclass(frozen=True)
class MecRecord:
    fingerprint: MecFingerprint
    class_size: int
    immorality_count: int
    representative: Dag


@dataclass(frozen=True)
class ImmoralityPolynomial:
    """Coefficients ``(m_0, m_1, ..., m_{m(G)})``."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def total(self) -> int:
        return sum(self.coeffs)


@dataclass(frozen=True)
class SizeSpectrum:
    """Sorted ``(class size k, number of classes s_k)`` pairs."""

    entries: tuple[tuple[int, int], ...]

    @classmethod
    def from_counts(cls, counts: dict[int, int] | Counter) -> "SizeSpectrum":
        return cls(tuple(sorted((k, s) for k, s in counts.items() if s)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    @property
    def num_classes(self) -> int:
        return sum(s for _, s in self.entries)

    @property
    def num_dags(self) -> int:
        return sum(k * s for k, s in self.entries)

    def key(self) -> str:
        """Canonical ``k1:s1,k2:s2,...`` string, k ascending."""
        return ",".join(f"{k}:{s}" for k, s in self.entries)


@dataclass(frozen=True)
class CensusRecord:
    graph6: str
    skeleton: Skeleton
    structure: StructureSummary
    mecs: tuple[MecRecord, ...]
    polynomial: ImmoralityPolynomial
    spectrum: SizeSpectrum
    complete: bool = True
    error: str | None = field(default=None, compare=False)

    @property
    def num_mecs(self) -> int:
        return len(self.mecs)

    def to_dict(self, with_mecs: bool = False) -> dict:
        s = self.structure
        out = {
            "graph6": self.graph6,
            "n": self.skeleton.n,
            "edges": s.edge_count,
            "degree_sequence": list(s.degree_sequence),
            "triangles": s.triangle_count,
            "induced_3paths": s.induced_3path_count,
            "num_mecs": self.num_mecs,
            "immorality_number": self.polynomial.degree,
            "m_coeffs": list(self.polynomial.coeffs),
            "spectrum": [list(e) for e in self.spectrum.entries],
        }
        if with_mecs:
            out["mec_list"] = [
                {
                    "fingerprint": m.fingerprint.to_string(),
                    "size": m.class_size,
                    "immoralities": m.immorality_count,
                    "representative": [list(a) for a in m.representative.arcs()],
                }
                for m in self.mecs
            ]
        return out

    def to_json(self, with_mecs: bool = False) -> str:
        return json.dumps(self.to_dict(with_mecs), separators=(",", ":"))


def census(g: Skeleton, budget: int | None = DEFAULT_BUDGET, graph6: str | None = None) -> CensusRecord:
    """Enumerate all DAGs on ``g`` and group them by immorality fingerprint.

    Raises :class:`BudgetExceeded` if the orientation count exceeds
    ``budget``; a partial record is never returned.
    """
    idx = build_immorality_index(g)
    tables = _node_tables(idx)
    groups: dict[int, list] = {}
    for parents in iter_parent_masks(g, budget):
        fp = _fingerprint_mask(parents, tables)
        entry = groups.get(fp)
        if entry is None:
            groups[fp] = [1, parents]
        else:
            entry[0] += 1

    width = len(idx)
    mecs = []
    for mask, (size, parents) in groups.items():
        fp = MecFingerprint.from_mask(mask, width)
        mecs.append(MecRecord(fp, size, popcount(mask), Dag.trusted(g, parents)))
    mecs.sort(key=lambda m: m.fingerprint)
    return CensusRecord(
        graph6=graph6 if graph6 is not None else encode_graph6(g),
        skeleton=g,
        structure=structure_summary(g),
        mecs=tuple(mecs),
        polynomial=polynomial_from_mecs(mecs),
        spectrum=spectrum_from_mecs(mecs),
    )


def polynomial_from_mecs(mecs: Iterable[MecRecord]) -> ImmoralityPolynomial:
    counts = Counter(m.immorality_count for m in mecs)
    if not counts:
        return ImmoralityPolynomial((0,))
    top = max(counts)
    return ImmoralityPolynomial(tuple(counts.get(k, 0) for k in range(top + 1)))


def spectrum_from_mecs(mecs: Iterable[MecRecord]) -> SizeSpectrum:
    return SizeSpectrum.from_counts(Counter(m.class_size for m in mecs))


def evaluate_M(p: ImmoralityPolynomial, x: Rational | int) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def evaluate_S(s: SizeSpectrum, x: float) -> float:
    if x == 0:
        return float(s.num_classes)
    return sum(sk / k ** x for k, sk in s.entries)


def _require_complete(r: CensusRecord):
    if not r.complete:
        raise IncompleteRecord(f"census of {r.graph6} is incomplete: {r.error}")


def immorality_number(r: CensusRecord) -> int:
    _require_complete(r)
    return r.polynomial.degree


def max_immorality_dag(r: CensusRecord) -> Dag:
    """Representative of the first class, in fingerprint order, with m(G) immoralities."""
    _require_complete(r)
    top = r.polynomial.degree
    return next(m.representative for m in r.mecs if m.immorality_count == top)


def spectrum_product(a: SizeSpectrum, b: SizeSpectrum) -> SizeSpectrum:
    counts: Counter = Counter()
    for ka, sa in a.entries:
        for kb, sb in b.entries:
            counts[ka * kb] += sa * sb
    return SizeSpectrum.from_counts(counts)


def polynomial_product(a: ImmoralityPolynomial, b: ImmoralityPolynomial) -> ImmoralityPolynomial:
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            out[i + j] += x * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return ImmoralityPolynomial(tuple(out))


def incomplete_record(g: Skeleton, graph6: str, error: str) -> CensusRecord:
    return CensusRecord(
        graph6=graph6,
        skeleton=g,
        structure=structure_summary(g),
        mecs=(),
        polynomial=ImmoralityPolynomial((0,)),
        spectrum=SizeSpectrum(()),
        complete=False,
        error=error,
    )


__all__ = [
    "ImmoralityIndex", "MecFingerprint", "MecRecord", "ImmoralityPolynomial", "SizeSpectrum",
    "CensusRecord", "build_immorality_index", "fingerprint_of", "immorality_count", "census",
    "evaluate_M", "evaluate_S", "immorality_number", "max_immorality_dag", "spectrum_product",
    "polynomial_product", "BudgetExceeded",
]
