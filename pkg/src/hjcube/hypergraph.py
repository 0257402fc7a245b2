"""Generic hypergraphs and their text serialization.

File format: line 1 is "N M" (vertex count, edge count), then M lines
each "k v_1 ... v_k" with the edge's size followed by its sorted
0-based vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class Hypergraph:
    vertex_count: int
    edges: tuple

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise ValueError(f"vertex_count must be >= 1, got {self.vertex_count}")
        edges = tuple(tuple(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for e in edges:
            if not e:
                raise ValueError("empty edge")
            if any(not 0 <= v < self.vertex_count for v in e):
                raise ValueError(f"edge {e} has a vertex outside [0, {self.vertex_count - 1}]")
            if any(a >= b for a, b in zip(e, e[1:])):
                raise ValueError(f"edge {e} not strictly increasing")
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def write_hypergraph(h: Hypergraph, dest) -> None:
    """Write in the text format; dest is a path or a writable file object."""
    if hasattr(dest, "write"):
        _write_hypergraph(h, dest)
    else:
        with open(Path(dest), "w", encoding="utf-8") as f:
            _write_hypergraph(h, f)


def _write_hypergraph(h: Hypergraph, f) -> None:
    f.write(f"{h.vertex_count} {h.edge_count}\n")
    for e in h.edges:
        f.write(f"{len(e)} " + " ".join(str(v) for v in e) + "\n")


def read_hypergraph(src) -> Hypergraph:
    """Parse the text format; src is a path or a readable file object."""
    if hasattr(src, "read"):
        text = src.read()
    else:
        text = Path(src).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty hypergraph file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"malformed header {lines[0]!r}, expected 'N M'")
    n, m = int(header[0]), int(header[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = [int(x) for x in ln.split()]
        if not parts or len(parts) != parts[0] + 1:
            raise ValueError(f"malformed edge line {ln!r}")
        edges.append(tuple(parts[1:]))
    return Hypergraph(n, edges)
