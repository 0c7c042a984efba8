"""Access to the bundled cubic graph catalog.

The catalog holds every cubic graph on up to 10 vertices (one file per
isomorphism class, connected or not) plus a few named 12-vertex graphs, in
the plain text graph format.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .graphs import Graph, parse_graph_text


def corpus_entries(
    directory: str | Path | None = None,
    max_vertices: int | None = None,
) -> list[tuple[str, Graph]]:
    """(id, graph) pairs sorted by file name; id is the file stem."""
    out: list[tuple[str, Graph]] = []
    if directory is None:
        root = resources.files("gdmagic").joinpath("data/cubic")
        items = [
            (entry.name, entry.read_text(encoding="utf-8"))
            for entry in root.iterdir()
            if entry.name.endswith(".graph")
        ]
    else:
        items = [
            (p.name, p.read_text(encoding="utf-8"))
            for p in Path(directory).iterdir()
            if p.name.endswith(".graph")
        ]
    for name, text in sorted(items):
        graph = parse_graph_text(text)
        if max_vertices is not None and graph.n > max_vertices:
            continue
        out.append((name[: -len(".graph")], graph))
    return out
