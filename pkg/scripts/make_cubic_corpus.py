#!/usr/bin/env python3
"""Regenerate the bundled cubic graph catalog.

Enumerates every cubic graph on 4, 6, 8, and 10 vertices up to isomorphism
(connected or not) and writes one file per class into
src/gdmagic/data/cubic/, followed by four named 12-vertex graphs built from
the package itself.  Needs networkx for the isomorphism dedup; that is a
tooling dependency only, the package never imports it.

Known class counts used as a self-check:
  all cubic:       n=4: 1, n=6: 2, n=8: 6,  n=10: 21
  connected cubic: n=4: 1, n=6: 2, n=8: 5,  n=10: 19
"""

from __future__ import annotations

import sys
from pathlib import Path

import networkx as nx

REPO = Path(__file__).resolve().parent.parent
OUT = REPO / "src" / "gdmagic" / "data" / "cubic"

EXPECTED_ALL = {4: 1, 6: 2, 8: 6, 10: 21}
EXPECTED_CONNECTED = {4: 1, 6: 2, 8: 5, 10: 19}


def labeled_cubic_graphs(n: int):
    """Yield each labeled cubic graph with N(0) = {1,2,3} exactly once.

    Every isomorphism class has such a labeling, so this covers all classes.
    The recursion completes the smallest deficient vertex by choosing its
    remaining neighbor set in one shot, which makes each labeled graph appear
    exactly once.
    """
    from itertools import combinations

    deg = [0] * n
    adj = [set() for _ in range(n)]
    edges = [(0, 1), (0, 2), (0, 3)]
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
        adj[u].add(v)
        adj[v].add(u)

    def rec():
        v = next((i for i in range(n) if deg[i] < 3), None)
        if v is None:
            yield tuple(sorted(edges))
            return
        need = 3 - deg[v]
        candidates = [u for u in range(v + 1, n) if deg[u] < 3 and u not in adj[v]]
        if len(candidates) < need:
            return
        for chosen in combinations(candidates, need):
            for u in chosen:
                deg[v] += 1
                deg[u] += 1
                adj[v].add(u)
                adj[u].add(v)
                edges.append((v, u))
            yield from rec()
            for u in chosen:
                deg[v] -= 1
                deg[u] -= 1
                adj[v].remove(u)
                adj[u].remove(v)
                edges.pop()

    yield from rec()


def classify(n: int):
    reps = []  # (edges, nx graph, connected)
    buckets: dict[str, list[int]] = {}
    seen = 0
    for edges in labeled_cubic_graphs(n):
        seen += 1
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(edges)
        key = nx.weisfeiler_lehman_graph_hash(g, iterations=4)
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(g, reps[i][1]) for i in bucket):
            continue
        bucket.append(len(reps))
        reps.append((edges, g, nx.is_connected(g)))
    print(f"n={n}: {seen} labeled candidates, {len(reps)} classes")
    return reps


def write_graph(path: Path, n: int, edges, comment: str) -> None:
    lines = [f"# {comment}", f"{n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in sorted(edges))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.graph"):
        old.unlink()
    for n in (4, 6, 8, 10):
        reps = classify(n)
        assert len(reps) == EXPECTED_ALL[n], (n, len(reps))
        connected = sum(1 for _, _, c in reps if c)
        assert connected == EXPECTED_CONNECTED[n], (n, connected)
        reps.sort(key=lambda item: item[0])
        for i, (edges, _, conn) in enumerate(reps, start=1):
            name = f"c{n:02d}_{i:02d}.graph"
            write_graph(
                OUT / name,
                n,
                edges,
                f"cubic graph on {n} vertices, class {i}, "
                f"{'connected' if conn else 'disconnected'}",
            )

    sys.path.insert(0, str(REPO / "src"))
    from gdmagic import graphs

    named = {
        "c12_2xk33": (graphs.disjoint_union(graphs.builtin("k33"), 2),
                      "two disjoint copies of k33"),
        "c12_gp_6_2": (graphs.gp(6, 2), "generalized Petersen graph gp(6,2)"),
        "c12_tietze": (graphs.builtin("tietze"), "Tietze graph"),
        "c12_x12": (graphs.builtin("x12"), "x12 graph"),
    }
    for name, (graph, comment) in named.items():
        write_graph(OUT / f"{name}.graph", graph.n, graph.edges(), comment)
    print(f"wrote {len(list(OUT.glob('*.graph')))} files to {OUT}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
