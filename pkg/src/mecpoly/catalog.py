"""Batch census over graph6 catalogs and the statistics built on top of it."""
from __future__ import annotations

import csv
import io
import json
from collections import Counter, OrderedDict, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from typing import Iterable, Iterator, Mapping

from .census import CensusRecord, SizeSpectrum, census, polynomial_product, spectrum_product
from .errors import BudgetExceeded, MecError
from .graph_core import Skeleton, disjoint_union, make_named, parse_graph6
from .orientations import DEFAULT_BUDGET

CHUNK_SIZE = 64


# --------------------------------------------------------------------------
# streaming census

def census_line(line: str, budget: int | None = DEFAULT_BUDGET, with_mecs: bool = False) -> tuple[bool, str]:
    """Census one graph6 line.  Returns (complete, JSON line).

    Failures become error records so that a batch never stops on one bad line.
    """
    text = line.strip()
    try:
        g = parse_graph6(text)
    except MecError as exc:
        return False, json.dumps({"graph6": text, "error": "parse", "message": str(exc)}, separators=(",", ":"))
    try:
        rec = census(g, budget=budget, graph6=text)
    except BudgetExceeded as exc:
        return False, json.dumps(
            {"graph6": text, "error": "budget", "message": str(exc), "reached": exc.reached},
            separators=(",", ":"),
        )
    return True, rec.to_json(with_mecs)


def _census_chunk(args):
    lines, budget, with_mecs = args
    return [census_line(line, budget, with_mecs) for line in lines]


def run_census_stream(lines: Iterable[str], workers: int = 1, budget: int | None = DEFAULT_BUDGET,
                      with_mecs: bool = False) -> Iterator[tuple[bool, str]]:
    """Census every nonblank line, yielding ``(complete, json_line)`` in input order.

    With ``workers > 1`` chunks of lines go to a process pool; at most a few
    chunks per worker are in flight, and results are released strictly in
    submission order, so output is identical to the sequential run.
    """
    if workers < 1:
        raise ValueError("workers must be positive")
    cleaned = (line for line in lines if line.strip())
    if workers == 1:
        for line in cleaned:
            yield census_line(line, budget, with_mecs)
        return
    window = 4 * workers
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending: deque = deque()
        it = iter(cleaned)
        while True:
            while len(pending) < window:
                chunk = list(islice(it, CHUNK_SIZE))
                if not chunk:
                    break
                pending.append(pool.submit(_census_chunk, (chunk, budget, with_mecs)))
            if not pending:
                return
            yield from pending.popleft().result()


# --------------------------------------------------------------------------
# collisions

def _as_dict(record) -> dict:
    if isinstance(record, CensusRecord):
        return record.to_dict()
    return record


def spectrum_key(record) -> str:
    """Canonical ``k1:s1,k2:s2,...`` key of a record's size spectrum."""
    if isinstance(record, CensusRecord):
        return record.spectrum.key()
    return ",".join(f"{k}:{s}" for k, s in sorted(map(tuple, record["spectrum"])))


@dataclass(frozen=True)
class CollisionReport:
    groups: tuple[tuple[str, tuple[str, ...]], ...]

    def __bool__(self):
        return bool(self.groups)

    def to_dict(self) -> dict:
        return {
            "num_groups": len(self.groups),
            "groups": [{"spectrum": key, "graphs": list(members)} for key, members in self.groups],
        }


def find_collisions(records: Iterable) -> CollisionReport:
    """Group records by exact spectrum; only groups with two or more members are kept.

    Error records (those without a spectrum) are skipped.
    """
    buckets: OrderedDict[str, list[str]] = OrderedDict()
    for rec in records:
        d = _as_dict(rec)
        if "spectrum" not in d:
            continue
        buckets.setdefault(spectrum_key(rec), []).append(d["graph6"])
    return CollisionReport(tuple((k, tuple(v)) for k, v in buckets.items() if len(v) >= 2))


# --------------------------------------------------------------------------
# the seven 10-node collisions

def _parse_component(token: str) -> list[Skeleton]:
    # "K4", "6K1", "2K2", "I3" -> list of component graphs
    mult = 1
    i = 0
    while token[i].isdigit():
        i += 1
    if i:
        mult = int(token[:i])
    kind, size = token[i], int(token[i + 1:])
    if kind == "K":
        g = make_named("complete", size)
    elif kind == "I":
        # I_3 read as the 3-node path; it is the graph that gives class sizes 72 and 24
        g = make_named("path", size)
    else:
        raise ValueError(f"unknown component {token!r}")
    return [g] * mult


TABLE1_ROWS: tuple[tuple[tuple[int, ...], str, str], ...] = (
    ((24,), "K4 6K1", "K3 2K2 3K1"),
    ((48,), "K4 K2 4K1", "K3 3K2 K1"),
    ((144,), "K4 K3 3K1", "2K3 2K2"),
    ((720,), "K6 4K1", "K5 K3 2K1"),
    ((1440,), "K6 K2 2K1", "K5 K3 K2"),
    ((2880,), "K6 2K2", "K5 K4 K1"),
    ((72, 24), "K4 I3 3K1", "K3 I3 2K2"),
)


def skeleton_from_components(spec: str) -> tuple[Skeleton, list[Skeleton]]:
    parts = [c for token in spec.split() for c in _parse_component(token)]
    return disjoint_union(*parts), parts


@dataclass(frozen=True)
class Table1Row:
    row: int
    class_sizes: tuple[int, ...]
    skeleton1: str
    skeleton2: str
    spectrum1: SizeSpectrum
    spectrum2: SizeSpectrum
    product1: SizeSpectrum
    product2: SizeSpectrum

    @property
    def passed(self) -> bool:
        sizes_ok = tuple(sorted(k for k, _ in self.spectrum1.entries)) == tuple(sorted(self.class_sizes))
        return sizes_ok and self.spectrum1 == self.spectrum2 == self.product1 == self.product2

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        sizes = ", ".join(map(str, self.class_sizes))
        return (f"row {self.row} [{sizes}] {self.skeleton1} vs {self.skeleton2}: "
                f"{self.spectrum1.key()} / {self.spectrum2.key()} {status}")


def verify_table1(budget: int | None = DEFAULT_BUDGET) -> list[Table1Row]:
    """Census both skeletons of each colliding pair directly, and again as a
    product of component spectra."""
    out = []
    for i, (sizes, left, right) in enumerate(TABLE1_ROWS, start=1):
        specs = []
        for side in (left, right):
            g, parts = skeleton_from_components(side)
            direct = census(g, budget=budget).spectrum
            prod = SizeSpectrum(((1, 1),))
            for part in parts:
                prod = spectrum_product(prod, census(part, budget=budget).spectrum)
            specs.append((direct, prod))
        out.append(Table1Row(i, sizes, left, right, specs[0][0], specs[1][0], specs[0][1], specs[1][1]))
    return out


# --------------------------------------------------------------------------
# aggregates

def aggregate_figure3(records: Iterable) -> dict[tuple[int, int], Fraction]:
    """Share of all MECs falling in each (edge count, floor(log2 class size)) cell."""
    counts: Counter = Counter()
    for rec in records:
        d = _as_dict(rec)
        if "spectrum" not in d:
            continue
        for k, s in d["spectrum"]:
            counts[(d["edges"], int(k).bit_length() - 1)] += s
    total = sum(counts.values())
    return {cell: Fraction(c, total) for cell, c in sorted(counts.items())}


def figure3_csv(table: Mapping[tuple[int, int], Fraction]) -> str:
    buf = io.StringIO()
    buf.write("# log2_size_bucket = floor(log2(class size)); proportion = share of all MECs\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["edges", "log2_size_bucket", "proportion"])
    for (edges, bucket), frac in table.items():
        w.writerow([edges, bucket, repr(float(frac))])
    return buf.getvalue()


def totals(records: Iterable) -> dict[str, int]:
    total = 0
    max_mecs = 0
    max_imm = 0
    for rec in records:
        d = _as_dict(rec)
        if "num_mecs" not in d:
            continue
        total += d["num_mecs"]
        max_mecs = max(max_mecs, d["num_mecs"])
        max_imm = max(max_imm, d["immorality_number"])
    return {"total_mecs": total, "max_mecs_per_skeleton": max_mecs, "max_immoralities": max_imm}


def labeled_graphs(n: int) -> Iterator[Skeleton]:
    """All 2^C(n,2) labelled graphs on n nodes."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Skeleton.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def census_product(g: Skeleton, h: Skeleton, budget: int | None = DEFAULT_BUDGET):
    """Spectrum and polynomial of G + H predicted from the components."""
    a, b = census(g, budget=budget), census(h, budget=budget)
    return spectrum_product(a.spectrum, b.spectrum), polynomial_product(a.polynomial, b.polynomial)


def read_jsonl(lines: Iterable[str]) -> Iterator[dict]:
    for line in lines:
        line = line.strip()
        if line:
            yield json.loads(line)
