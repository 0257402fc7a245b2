"""Checks on colorings: balancedness, rainbow and monochromatic lines.

A line is rainbow when its t points carry t pairwise distinct colors and
monochromatic when they all carry the same one.  Scans run in canonical
enumeration order, so witnesses and counts are deterministic; a scan can be
partitioned over worker threads by first-coordinate role and merged back in
stream order, which keeps the output identical for any worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .cube import (
    BACKWARD,
    FORWARD,
    CubeShape,
    LinePattern,
    _line_ranks,
    _rank_weights,
    iter_lines,
    line_count,
)
from .colorings import Coloring
from .hypergraph import Hypergraph


def class_sizes(c: Coloring) -> dict:
    """Multiplicity of every color, as {color: count} with all k present."""
    sizes = {color: 0 for color in range(c.k)}
    for col in c.colors:
        sizes[col] += 1
    return sizes


def is_balanced(c: Coloring) -> bool:
    sizes = class_sizes(c)
    return len(set(sizes.values())) == 1


def _require_shape(c: Coloring) -> CubeShape:
    if c.shape is None:
        raise ValueError("coloring is not defined over a cube shape")
    return c.shape


def _scan_prefix(c: Coloring, kind: str, prefix) -> tuple:
    """Scan one chunk of the line stream.

    Returns (lines, rainbow_count, first_rainbow, mono_count, first_mono).
    """
    shape = c.shape
    t = shape.t
    colors = c.colors
    weights = _rank_weights(shape)
    rainbow_possible = c.k >= t
    lines = 0
    rainbow = 0
    mono = 0
    first_rainbow = None
    first_mono = None
    for lp in iter_lines(shape, kind, prefix):
        lines += 1
        ranks = _line_ranks(lp.roles, t, weights)
        first = colors[ranks[0]]
        seen = 1 << first
        is_mono = True
        distinct = True
        for r in ranks[1:]:
            col = colors[r]
            if col != first:
                is_mono = False
            bit = 1 << col
            if seen & bit:
                distinct = False
            seen |= bit
        if is_mono:
            mono += 1
            if first_mono is None:
                first_mono = lp
        elif rainbow_possible and distinct:
            rainbow += 1
            if first_rainbow is None:
                first_rainbow = lp
    return lines, rainbow, first_rainbow, mono, first_mono


def _scan_prefixes(shape: CubeShape, kind: str) -> list:
    roles = list(range(shape.t)) + [FORWARD]
    if kind == "geometric":
        roles.append(BACKWARD)
    return [(r,) for r in roles]


def _scan(c: Coloring, kind: str, threads: int = 1) -> tuple:
    """Full line scan, partitioned by first-coordinate role.

    Chunk results merge in stream order, so counts and first witnesses are
    those of the sequential scan regardless of thread count.
    """
    prefixes = _scan_prefixes(_require_shape(c), kind)
    if threads <= 1:
        parts = [_scan_prefix(c, kind, p) for p in prefixes]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda p: _scan_prefix(c, kind, p), prefixes))
    lines = rainbow = mono = 0
    first_rainbow = first_mono = None
    for pl, pr, pfr, pm, pfm in parts:
        lines += pl
        rainbow += pr
        mono += pm
        if first_rainbow is None:
            first_rainbow = pfr
        if first_mono is None:
            first_mono = pfm
    return lines, rainbow, first_rainbow, mono, first_mono


def find_rainbow_line(c: Coloring, kind: str = "geometric") -> "LinePattern | None":
    """First rainbow line in canonical order, or None."""
    shape = _require_shape(c)
    if c.k < shape.t:
        return None
    t = shape.t
    colors = c.colors
    weights = _rank_weights(shape)
    for lp in iter_lines(shape, kind):
        seen = 0
        for r in _line_ranks(lp.roles, t, weights):
            bit = 1 << colors[r]
            if seen & bit:
                break
            seen |= bit
        else:
            return lp
    return None


def count_rainbow_lines(c: Coloring, kind: str = "geometric", threads: int = 1) -> int:
    shape = _require_shape(c)
    if c.k < shape.t:
        return 0
    return _scan(c, kind, threads)[1]


def is_rainbow_free(c: Coloring, kind: str = "geometric") -> bool:
    return find_rainbow_line(c, kind) is None


def find_monochromatic_line(c: Coloring, kind: str = "geometric") -> "LinePattern | None":
    """First line whose t points share one color, or None."""
    shape = _require_shape(c)
    t = shape.t
    colors = c.colors
    weights = _rank_weights(shape)
    for lp in iter_lines(shape, kind):
        ranks = _line_ranks(lp.roles, t, weights)
        first = colors[ranks[0]]
        if all(colors[r] == first for r in ranks[1:]):
            return lp
    return None


def edge_is_rainbow(colors, edge) -> bool:
    """All vertices of the edge carry pairwise distinct colors."""
    seen = 0
    for v in edge:
        bit = 1 << colors[v]
        if seen & bit:
            return False
        seen |= bit
    return True


def find_rainbow_edge(c: Coloring, h: Hypergraph):
    """First rainbow edge of a hypergraph coloring, or None."""
    if len(c.colors) != h.vertex_count:
        raise ValueError("coloring size does not match hypergraph")
    for e in h.edges:
        if edge_is_rainbow(c.colors, e):
            return e
    return None


def count_rainbow_edges(c: Coloring, h: Hypergraph) -> int:
    if len(c.colors) != h.vertex_count:
        raise ValueError("coloring size does not match hypergraph")
    return sum(1 for e in h.edges if edge_is_rainbow(c.colors, e))


def is_anti_latin(c: Coloring) -> bool:
    """Is this t x t grid coloring an anti-Latin square?

    Requires n = 2.  True iff k = t, the coloring is balanced, and every
    row, every column, and both main diagonals carry at most t-1 distinct
    colors (with exactly t cells each, that is the same as not rainbow).
    """
    shape = _require_shape(c)
    if shape.n != 2:
        raise ValueError(f"anti-Latin check needs n=2, got n={shape.n}")
    t = shape.t
    if c.k != t or not is_balanced(c):
        return False
    colors = c.colors
    groups = []
    for i in range(t):
        groups.append(colors[i * t:(i + 1) * t])            # row i
        groups.append(colors[i::t])                          # column i
    groups.append([colors[i * t + i] for i in range(t)])     # left diagonal
    groups.append([colors[i * t + t - 1 - i] for i in range(t)])  # right diagonal
    return all(len(set(g)) <= t - 1 for g in groups)


@dataclass(frozen=True)
class VerifyReport:
    """Aggregate of one full scan over a cube coloring's line stream."""

    kind: str
    k: int
    vertex_count: int
    shape: CubeShape
    class_sizes: dict
    balanced: bool
    line_count: int
    rainbow_line_count: int
    first_rainbow_witness: "LinePattern | None"
    monochromatic_line_count: int
    first_monochromatic_witness: "LinePattern | None"

    def __post_init__(self) -> None:
        if sum(self.class_sizes.values()) != self.vertex_count:
            raise ValueError("class sizes do not sum to the vertex count")
        if (self.rainbow_line_count == 0) != (self.first_rainbow_witness is None):
            raise ValueError("rainbow count and witness disagree")

    def to_dict(self) -> dict:
        return {
            "t": self.shape.t,
            "n": self.shape.n,
            "vertices": self.vertex_count,
            "kind": self.kind,
            "k": self.k,
            "class_sizes": {str(col): self.class_sizes[col] for col in sorted(self.class_sizes)},
            "balanced": self.balanced,
            "lines": self.line_count,
            "rainbow_count": self.rainbow_line_count,
            "mono_count": self.monochromatic_line_count,
            "witness": {
                "rainbow": self.first_rainbow_witness.code()
                if self.first_rainbow_witness else None,
                "monochromatic": self.first_monochromatic_witness.code()
                if self.first_monochromatic_witness else None,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [
            f"shape: C_{d['t']}^{d['n']} ({d['vertices']} points)",
            f"kind: {d['kind']}",
            f"k: {d['k']}",
            "class sizes: " + " ".join(str(d["class_sizes"][s]) for s in sorted(d["class_sizes"], key=int)),
            f"balanced: {'yes' if d['balanced'] else 'no'}",
            f"lines scanned: {d['lines']}",
            f"rainbow lines: {d['rainbow_count']}",
            f"first rainbow: {d['witness']['rainbow'] or '-'}",
            f"monochromatic lines: {d['mono_count']}",
            f"first monochromatic: {d['witness']['monochromatic'] or '-'}",
        ]
        return "\n".join(lines)


def verify_report(c: Coloring, kind: str = "geometric", threads: int = 1) -> VerifyReport:
    """One full pass over the line stream, aggregating every check."""
    shape = _require_shape(c)
    sizes = class_sizes(c)
    lines, rainbow, first_rainbow, mono, first_mono = _scan(c, kind, threads)
    if lines != line_count(shape, kind):
        raise RuntimeError("scan did not cover the full line stream")
    return VerifyReport(
        kind=kind,
        k=c.k,
        vertex_count=c.num_vertices,
        shape=shape,
        class_sizes=sizes,
        balanced=len(set(sizes.values())) == 1,
        line_count=lines,
        rainbow_line_count=rainbow,
        first_rainbow_witness=first_rainbow,
        monochromatic_line_count=mono,
        first_monochromatic_witness=first_mono,
    )
