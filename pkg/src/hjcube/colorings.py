"""Balanced rainbow-free coloring constructions and the coloring file format."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from pathlib import Path

from .cube import CubeShape, rank


@dataclass(frozen=True)
class Coloring:
    """A surjective map from vertices (point ranks) to colors [0, k-1].

    For cube colorings `shape` is set and the vector is indexed by point
    rank; for plain hypergraphs `shape` is None.
    """

    k: int
    colors: tuple
    shape: "CubeShape | None" = None

    def __post_init__(self) -> None:
        colors = tuple(self.colors)
        object.__setattr__(self, "colors", colors)
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.shape is not None and len(colors) != self.shape.cardinality:
            raise ValueError(
                f"{len(colors)} entries, expected {self.shape.cardinality} for {self.shape}"
            )
        used = set()
        for c in colors:
            if not 0 <= c < self.k:
                raise ValueError(f"color {c} out of range [0, {self.k - 1}]")
            used.add(c)
        if len(used) != self.k:
            missing = sorted(set(range(self.k)) - used)
            raise ValueError(f"colors {missing} unused, colorings must be surjective")

    @property
    def num_vertices(self) -> int:
        return len(self.colors)


def halving_coloring(shape: CubeShape, allow_degenerate: bool = False) -> Coloring:
    """The (t/2)^n-coloring for even t that halves every digit.

    Point x gets color sum_i (t/2)^(i-1) * floor(x_i / 2).  Every class has
    size exactly 2^n and no geometric line is rainbow.  t = 2 collapses to a
    single color and is only allowed behind allow_degenerate.
    """
    t, n = shape.t, shape.n
    if t % 2 != 0:
        raise ValueError(f"halving coloring needs even t, got {t}")
    if t == 2 and not allow_degenerate:
        raise ValueError("t=2 yields a degenerate 1-coloring; pass allow_degenerate=True")
    half = t // 2
    # Build dimension by dimension: digit x_m contributes (t/2)^(m-1) * floor(x_m/2),
    # and in rank order x_m cycles fastest among the first m digits.
    colors = [x // 2 for x in range(t)]
    for m in range(2, n + 1):
        w = half ** (m - 1)
        colors = [c + w * (x // 2) for c in colors for x in range(t)]
    return Coloring(k=half**n, colors=colors, shape=shape)


_C33_CLASSES = (
    ("000", "002", "020", "200", "220", "022", "202", "222", "001"),
    ("011", "021", "101", "201", "111", "221", "010", "210", "012"),
    ("100", "110", "120", "121", "211", "102", "112", "122", "212"),
)


def c33_base() -> Coloring:
    """The explicit balanced rainbow-free 3-coloring of C_3^3."""
    shape = CubeShape(3, 3)
    colors = [-1] * 27
    for color, words in enumerate(_C33_CLASSES):
        for word in words:
            r = rank(tuple(int(ch) for ch in word), shape)
            if colors[r] != -1:
                raise RuntimeError(f"word {word} listed twice in base coloring")
            colors[r] = color
    if -1 in colors:
        raise RuntimeError("base coloring does not cover all 27 words")
    return Coloring(k=3, colors=colors, shape=shape)


_ANTI_LATIN_4 = (
    (0, 0, 2, 2),
    (0, 0, 2, 2),
    (1, 1, 3, 3),
    (1, 1, 3, 3),
)


def anti_latin_grid(t: int) -> list:
    """A t x t anti-Latin square as a list of rows.

    Symbols 0..t-1 each appear t times; no row, column, or main diagonal
    carries t distinct symbols.  Grown recursively from the 4x4 base: the
    old square shifts right one column, a new symbol s fills most of the new
    left column plus both ends of the new bottom row, and each old symbol
    gains exactly one new cell.
    """
    if t < 4:
        raise ValueError(f"anti-Latin squares need t >= 4, got {t}")
    grid = [list(row) for row in _ANTI_LATIN_4]
    for old in range(4, t):
        s = old  # the new symbol
        bigger = [[s] + row for row in grid]
        bigger[old - 1][0] = old - 1
        bottom = [s] + list(range(old - 1)) + [s]
        bigger.append(bottom)
        grid = bigger
    return grid


def anti_latin_square(t: int) -> Coloring:
    """Anti-Latin square as a balanced rainbow-free t-coloring of C_t^2."""
    grid = anti_latin_grid(t)
    shape = CubeShape(t, 2)
    coloring = Coloring(
        k=t, colors=[grid[i][j] for i in range(t) for j in range(t)], shape=shape
    )
    from .verify import is_anti_latin  # deferred, verify imports this module

    if not is_anti_latin(coloring):
        raise RuntimeError(f"anti-Latin construction produced an invalid array at t={t}")
    return coloring


def lift_coloring(shape: CubeShape) -> Coloring:
    """Balanced rainbow-free t-coloring of C_t^n by coloring a short prefix.

    For t = 3 (n >= 3) the color is the C_3^3 base coloring of the first
    three digits; for t >= 4 (n >= 2) it is the anti-Latin square color of
    the first two.  Every class has size t^(n-1).  (3, 2) has no balanced
    rainbow-free 3-coloring at all and t = 2 is rejected.
    """
    t, n = shape.t, shape.n
    if t == 3 and n >= 3:
        base = c33_base()
    elif t >= 4 and n >= 2:
        base = anti_latin_square(t)
    else:
        raise ValueError(f"no lift construction for (t, n) = ({t}, {n})")
    m = base.shape.n
    reps = t ** (n - m)
    colors = [c for c in base.colors for _ in range(reps)]
    return Coloring(k=t, colors=colors, shape=shape)


def write_coloring(c: Coloring, dest) -> None:
    """Write the text format; dest is a path or a writable file object.

    Header "t n k" for cube colorings ("N 0 k" otherwise), then the colors
    in rank order.  Cube colorings with n >= 2 are laid out as t lines (one
    per value of the leading digit), so n = 2 files read as t x t tables.
    """
    if hasattr(dest, "write"):
        _write_coloring(c, dest)
    else:
        with open(Path(dest), "w", encoding="utf-8") as f:
            _write_coloring(c, f)


def _write_coloring(c: Coloring, f) -> None:
    if c.shape is not None:
        t, n = c.shape.t, c.shape.n
        f.write(f"{t} {n} {c.k}\n")
        row = t ** (n - 1)
        for start in range(0, len(c.colors), row):
            f.write(" ".join(str(x) for x in c.colors[start:start + row]) + "\n")
    else:
        f.write(f"{c.num_vertices} 0 {c.k}\n")
        f.write(" ".join(str(x) for x in c.colors) + "\n")


def read_coloring(src) -> Coloring:
    """Parse the text format; src is a path or a readable file object."""
    if hasattr(src, "read"):
        text = src.read()
    else:
        text = Path(src).read_text(encoding="utf-8")
    tokens = text.split()
    if len(tokens) < 3:
        raise ValueError("missing coloring header 't n k'")
    a, b, k = (int(x) for x in tokens[:3])
    if b == 0:
        shape = None
        expected = a
    else:
        shape = CubeShape(a, b)
        expected = shape.cardinality
    entries = [int(x) for x in tokens[3:]]
    if len(entries) != expected:
        raise ValueError(f"expected {expected} color entries, found {len(entries)}")
    return Coloring(k=k, colors=entries, shape=shape)
