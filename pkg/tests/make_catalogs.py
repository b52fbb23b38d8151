"""Regenerate tests/data/connected{n}.g6 (all connected graphs on n nodes, one per isomorphism class).

n <= 7 comes from the networkx graph atlas.  n = 8 extends every connected
7-node graph by a vertex with a nonempty neighbourhood (every connected
graph has a non-cut vertex) and deduplicates by nauty certificate.

    python tests/make_catalogs.py
"""
from pathlib import Path

import networkx as nx
import pynauty

from mecpoly.graph_core import Skeleton, encode_graph6, iter_bits

DATA = Path(__file__).parent / "data"


def atlas_connected(n):
    out = []
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == n and nx.is_connected(g):
            out.append(Skeleton.from_edges(n, g.edges()))
    return out


def certificate(g):
    adj = {v: list(iter_bits(g.rows[v])) for v in range(g.n)}
    return pynauty.certificate(pynauty.Graph(g.n, adjacency_dict=adj))


def extend(graphs):
    seen = {}
    for g in graphs:
        n = g.n
        for mask in range(1, 1 << n):
            rows = list(g.rows) + [mask]
            for v in iter_bits(mask):
                rows[v] |= 1 << n
            h = Skeleton(n + 1, tuple(rows))
            seen.setdefault(certificate(h), h)
    return sorted(seen.values(), key=lambda h: (h.edge_count, encode_graph6(h)))


def main():
    DATA.mkdir(exist_ok=True)
    catalogs = {n: atlas_connected(n) for n in range(1, 8)}
    catalogs[8] = extend(catalogs[7])
    for n, graphs in catalogs.items():
        (DATA / f"connected{n}.g6").write_text("".join(encode_graph6(g) + "\n" for g in graphs))
        print(n, len(graphs))


if __name__ == "__main__":
    main()
