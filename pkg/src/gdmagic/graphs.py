"""Immutable simple graphs, builtin cubic families, and structural predicates."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, FormatError


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph with display names and sorted adjacency lists."""

    n: int
    names: tuple[str, ...]
    adj: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def name_index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def from_edges(
    n: int,
    edges: Iterable[tuple[int, int]],
    names: Sequence[str] | None = None,
) -> Graph:
    """Build a graph from an edge list, deduplicating and symmetrizing."""
    if n < 0:
        raise FormatError(f"vertex count {n} must be >= 0")
    if names is None:
        names = tuple(f"v{i}" for i in range(n))
    else:
        names = tuple(names)
        if len(names) != n:
            raise FormatError(f"{len(names)} names for {n} vertices")
        if len(set(names)) != n:
            raise FormatError("vertex names must be distinct")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise FormatError(f"loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, names, tuple(tuple(sorted(s)) for s in nbrs))


def gp(n: int, k: int) -> Graph:
    """The generalized Petersen graph: outer n-cycle x_i, inner star polygon y_i
    with step k, and spokes x_i y_i.  Requires 1 <= k < n/2."""
    if n < 3 or k < 1 or 2 * k >= n:
        raise DomainError(f"gp({n},{k}) requires n >= 3 and 1 <= k < n/2")
    names = tuple(f"x{i}" for i in range(n)) + tuple(f"y{i}" for i in range(n))
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((n + i, n + (i + k) % n))
        edges.append((i, n + i))
    return from_edges(2 * n, edges, names)


def _k33() -> Graph:
    names = ("x0", "x1", "x2", "y0", "y1", "y2")
    edges = [(i, 3 + j) for i in range(3) for j in range(3)]
    return from_edges(6, edges, names)


def _tietze() -> Graph:
    # 9-cycle x0..x8, triangle y0y1y2, spokes x0y0 x3y1 x6y2,
    # chords x1x5 x2x7 x4x8
    names = tuple(f"x{i}" for i in range(9)) + ("y0", "y1", "y2")
    edges = [(i, (i + 1) % 9) for i in range(9)]
    edges += [(9, 10), (10, 11), (9, 11)]
    edges += [(0, 9), (3, 10), (6, 11)]
    edges += [(1, 5), (2, 7), (4, 8)]
    return from_edges(12, edges, names)


def _x12() -> Graph:
    # 8-cycle x0..x7 with four inner vertices y0..y3; each y_i sees two
    # consecutive cycle vertices, plus the inner chords y0y2 and y1y3
    names = tuple(f"x{i}" for i in range(8)) + ("y0", "y1", "y2", "y3")
    edges = [(i, (i + 1) % 8) for i in range(8)]
    edges += [(1, 8), (2, 8), (3, 9), (4, 9), (5, 10), (6, 10), (7, 11), (0, 11)]
    edges += [(8, 10), (9, 11)]
    return from_edges(12, edges, names)


_BUILTINS = {"k33": _k33, "tietze": _tietze, "x12": _x12}


def builtin(name: str) -> Graph:
    """One of the named graphs: k33, tietze, x12."""
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise DomainError(f"unknown builtin graph {name!r}") from None


def disjoint_union(graph: Graph, t: int) -> Graph:
    """t disjoint copies; copy j of vertex x is displayed as x^j."""
    if t < 1:
        raise DomainError(f"copy count {t} must be >= 1")
    if t == 1:
        return graph
    n = graph.n
    names = tuple(
        f"{graph.names[v]}^{j + 1}" for j in range(t) for v in range(n)
    )
    edges = [
        (j * n + u, j * n + v) for j in range(t) for u, v in graph.edges()
    ]
    return from_edges(t * n, edges, names)


def regular_valency(graph: Graph) -> int | None:
    if graph.n == 0:
        return 0
    degs = {len(a) for a in graph.adj}
    return degs.pop() if len(degs) == 1 else None


def find_4cycle(graph: Graph) -> tuple[int, int, int, int] | None:
    """A 4-cycle (u, a, v, b) if one exists: u,v share the neighbors a,b."""
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            common = sorted(set(graph.adj[u]) & set(graph.adj[v]))
            if len(common) >= 2:
                return (u, common[0], v, common[1])
    return None


def has_4cycle(graph: Graph) -> bool:
    return find_4cycle(graph) is not None


def components(graph: Graph) -> list[tuple[int, ...]]:
    seen = [False] * graph.n
    out = []
    for start in range(graph.n):
        if seen[start]:
            continue
        comp = []
        queue = deque([start])
        seen[start] = True
        while queue:
            v = queue.popleft()
            comp.append(v)
            for u in graph.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
        out.append(tuple(sorted(comp)))
    return out


def is_connected(graph: Graph) -> bool:
    return len(components(graph)) <= 1


def same_structure(a: Graph, b: Graph) -> bool:
    """Equal vertex count and identical edge sets under the identity indexing."""
    return a.n == b.n and a.adj == b.adj


@dataclass(frozen=True)
class VertexPartition:
    """A partition of the vertex set into disjoint, covering, non-empty parts."""

    graph: Graph
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for part in self.parts:
            if not part:
                raise DomainError("empty partition part")
            for v in part:
                if not 0 <= v < self.graph.n:
                    raise DomainError(f"vertex {v} out of range")
                if v in seen:
                    raise DomainError(f"vertex {v} appears in two parts")
                seen.add(v)
        if len(seen) != self.graph.n:
            raise DomainError("partition does not cover the vertex set")

    @property
    def p(self) -> int:
        return len(self.parts)

    def part_of(self) -> list[int]:
        out = [-1] * self.graph.n
        for i, part in enumerate(self.parts):
            for v in part:
                out[v] = i
        return out

    def is_equitable(self) -> bool:
        """Every vertex has the same number of neighbors in every part."""
        r = regular_valency(self.graph)
        if r is None or r % self.p != 0:
            return False
        share = r // self.p
        owner = self.part_of()
        for v in range(self.graph.n):
            counts = [0] * self.p
            for u in self.graph.adj[v]:
                counts[owner[u]] += 1
            if any(c != share for c in counts):
                return False
        return True


def parse_graph_text(text: str) -> Graph:
    """Parse the plain text format: ``n m`` header then m lines ``u v``."""
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise FormatError("empty graph file")
    header = lines[0].split()
    if len(header) != 2:
        raise FormatError(f"bad header {lines[0]!r}, expected 'n m'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise FormatError(f"bad header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise FormatError(f"header declares {m} edges, file has {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 2:
            raise FormatError(f"bad edge line {ln!r}")
        try:
            edges.append((int(toks[0]), int(toks[1])))
        except ValueError as exc:
            raise FormatError(f"bad edge line {ln!r}") from exc
    graph = from_edges(n, edges)
    if graph.m != m:
        raise FormatError("duplicate edges in file")
    return graph


def format_graph_text(graph: Graph) -> str:
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in sorted(graph.edges()))
    return "\n".join(lines) + "\n"


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def parse_graph_selector(selector: str) -> Graph:
    """Resolve a CLI graph selector.

    Accepted forms: ``k33``, ``tietze``, ``x12``, ``gp:<n>:<k>``,
    ``t:<count>:<selector>`` for disjoint unions, or a file path.
    """
    if selector in _BUILTINS:
        return builtin(selector)
    if selector.startswith("gp:"):
        parts = selector.split(":")
        if len(parts) != 3:
            raise FormatError(f"bad gp selector {selector!r}, expected gp:<n>:<k>")
        try:
            return gp(int(parts[1]), int(parts[2]))
        except ValueError as exc:
            raise FormatError(f"bad gp selector {selector!r}") from exc
    if selector.startswith("t:"):
        parts = selector.split(":", 2)
        if len(parts) != 3:
            raise FormatError(
                f"bad union selector {selector!r}, expected t:<count>:<selector>"
            )
        try:
            count = int(parts[1])
        except ValueError as exc:
            raise FormatError(f"bad union selector {selector!r}") from exc
        return disjoint_union(parse_graph_selector(parts[2]), count)
    if os.path.exists(selector):
        return load_graph(selector)
    raise FormatError(f"unknown graph selector or missing file: {selector!r}")


def parse_partition_text(text: str, graph: Graph) -> VertexPartition:
    """One non-comment line per part; vertex names separated by whitespace."""
    index = graph.name_index
    parts = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        ids = []
        for name in ln.split():
            if name not in index:
                raise FormatError(f"unknown vertex name {name!r} in partition")
            ids.append(index[name])
        parts.append(tuple(sorted(ids)))
    if not parts:
        raise FormatError("empty partition file")
    return VertexPartition(graph, tuple(parts))


def format_partition_text(partition: VertexPartition) -> str:
    names = partition.graph.names
    lines = [" ".join(names[v] for v in part) for part in partition.parts]
    return "\n".join(lines) + "\n"
