"""Cubes C_t^n over the alphabet [0, t-1]: points, ranking, and lines.

A geometric line is a sequence of t distinct points where every coordinate
is either constant, increasing with the point index i, or decreasing
(value t-1-i).  A combinatorial line uses no decreasing coordinate.
Reversing a line (i -> t-1-i) yields the same point set, so lines are
canonicalized: the first moving coordinate is always increasing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .hypergraph import Hypergraph

FORWARD = "F"
BACKWARD = "B"

Role = "int | str"
Point = "tuple[int, ...]"

# t^n must stay in unsigned 63-bit range
_MAX_CARDINALITY = 2**63 - 1


@dataclass(frozen=True)
class CubeShape:
    """The pair (t, n) describing the n-cube over t elements."""

    t: int
    n: int

    def __post_init__(self) -> None:
        if self.t < 2:
            raise ValueError(f"alphabet size t must be >= 2, got {self.t}")
        if self.n < 1:
            raise ValueError(f"dimension n must be >= 1, got {self.n}")
        if self.t**self.n > _MAX_CARDINALITY:
            raise OverflowError(
                f"cardinality {self.t}^{self.n} exceeds the 63-bit bound"
            )

    @property
    def cardinality(self) -> int:
        return self.t**self.n


def rank(point: tuple[int, ...], shape: CubeShape) -> int:
    """Base-t rank of a point, first digit most significant."""
    t = shape.t
    if len(point) != shape.n:
        raise ValueError(f"point has {len(point)} digits, expected {shape.n}")
    r = 0
    for d in point:
        if not 0 <= d < t:
            raise ValueError(f"digit {d} out of range [0, {t - 1}]")
        r = r * t + d
    return r


def unrank(r: int, shape: CubeShape) -> tuple[int, ...]:
    """Inverse of rank."""
    if not 0 <= r < shape.cardinality:
        raise ValueError(f"rank {r} out of range [0, {shape.cardinality - 1}]")
    t = shape.t
    digits = [0] * shape.n
    for i in range(shape.n - 1, -1, -1):
        r, digits[i] = divmod(r, t)
    return tuple(digits)


def ap_embed(point: tuple[int, ...], shape: CubeShape) -> int:
    """Map a point into [1, t^n].

    Under this map the t points of any geometric line land on a t-term
    arithmetic progression with nonzero common difference.
    """
    return 1 + rank(point, shape)


def _swap_direction(role):
    if role == FORWARD:
        return BACKWARD
    if role == BACKWARD:
        return FORWARD
    return role


def canonical_roles(roles) -> tuple:
    """Swap Forward/Backward everywhere if the first moving role is Backward."""
    roles = tuple(roles)
    for role in roles:
        if role == FORWARD:
            return roles
        if role == BACKWARD:
            return tuple(_swap_direction(r) for r in roles)
    return roles


@dataclass(frozen=True)
class LinePattern:
    """Per-coordinate roles of a line: a fixed digit, FORWARD, or BACKWARD.

    Patterns are canonical: the first moving coordinate is FORWARD, so each
    unordered point set has exactly one pattern.  Use from_roles() to build
    one from an arbitrary (possibly reversed) role sequence.
    """

    roles: tuple

    def __post_init__(self) -> None:
        roles = tuple(self.roles)
        object.__setattr__(self, "roles", roles)
        first_moving = None
        for role in roles:
            if role in (FORWARD, BACKWARD):
                if first_moving is None:
                    first_moving = role
            elif not (isinstance(role, int) and role >= 0):
                raise ValueError(f"invalid role {role!r}")
        if first_moving is None:
            raise ValueError("pattern has no moving coordinate, denotes a point")
        if first_moving == BACKWARD:
            raise ValueError(
                "non-canonical pattern: first moving coordinate must be FORWARD"
            )

    @classmethod
    def from_roles(cls, roles) -> "LinePattern":
        return cls(canonical_roles(roles))

    @property
    def is_combinatorial(self) -> bool:
        return BACKWARD not in self.roles

    def code(self) -> str:
        """Compact text form, e.g. '=2,F,B'."""
        return ",".join(
            r if r in (FORWARD, BACKWARD) else f"={r}" for r in self.roles
        )

    @classmethod
    def from_code(cls, code: str) -> "LinePattern":
        roles = []
        for part in code.split(","):
            part = part.strip()
            if part == FORWARD or part == BACKWARD:
                roles.append(part)
            elif part.startswith("="):
                roles.append(int(part[1:]))
            else:
                raise ValueError(f"bad role code {part!r}")
        return cls(tuple(roles))


def _check_pattern(lp: LinePattern, shape: CubeShape) -> None:
    if len(lp.roles) != shape.n:
        raise ValueError(f"pattern has {len(lp.roles)} roles, expected {shape.n}")
    for role in lp.roles:
        if isinstance(role, int) and role >= shape.t:
            raise ValueError(f"fixed digit {role} out of range for t={shape.t}")


def line_points(lp: LinePattern, shape: CubeShape) -> list:
    """The t points of a line, in sequence order (index i = 0..t-1)."""
    _check_pattern(lp, shape)
    t = shape.t
    points = []
    for i in range(t):
        points.append(
            tuple(
                i if r == FORWARD else t - 1 - i if r == BACKWARD else r
                for r in lp.roles
            )
        )
    return points


def _iter_patterns(shape: CubeShape, prefix, allow_backward: bool) -> Iterator[LinePattern]:
    t, n = shape.t, shape.n
    prefix = tuple(prefix)
    if len(prefix) > n:
        raise ValueError("prefix longer than dimension")
    moving_seen = False
    for role in prefix:
        if role == FORWARD:
            moving_seen = True
        elif role == BACKWARD:
            if not allow_backward or not moving_seen:
                return  # non-canonical or non-combinatorial prefix: empty stream
            moving_seen = True
        elif not (isinstance(role, int) and 0 <= role < t):
            raise ValueError(f"invalid prefix role {role!r}")

    roles = list(prefix) + [None] * (n - len(prefix))

    # DFS in role order: fixed digits 0..t-1, then FORWARD, then BACKWARD.
    # Before the first moving coordinate BACKWARD is skipped (canonical form),
    # and on the last coordinate fixed digits are skipped since they cannot
    # complete a line any more.
    def rec(pos: int, moving: bool) -> Iterator[LinePattern]:
        if pos == n:
            if moving:
                yield LinePattern(tuple(roles))
            return
        last = pos == n - 1
        if not (last and not moving):
            for c in range(t):
                roles[pos] = c
                yield from rec(pos + 1, moving)
        roles[pos] = FORWARD
        yield from rec(pos + 1, True)
        if allow_backward and moving:
            roles[pos] = BACKWARD
            yield from rec(pos + 1, True)
        roles[pos] = None

    yield from rec(len(prefix), moving_seen)


def enumerate_geometric_lines(shape: CubeShape, prefix=()) -> Iterator[LinePattern]:
    """Stream every canonical geometric line pattern exactly once.

    With a role prefix, streams only the patterns extending it; prefixes at a
    fixed depth partition the sequential stream into disjoint ordered chunks.
    """
    return _iter_patterns(shape, prefix, allow_backward=True)


def enumerate_combinatorial_lines(shape: CubeShape, prefix=()) -> Iterator[LinePattern]:
    """Stream every combinatorial line pattern (no Backward role) exactly once."""
    return _iter_patterns(shape, prefix, allow_backward=False)


def geometric_line_count(shape: CubeShape) -> int:
    """((t+2)^n - t^n) / 2, the number of unordered geometric lines."""
    t, n = shape.t, shape.n
    return ((t + 2) ** n - t**n) // 2


def combinatorial_line_count(shape: CubeShape) -> int:
    """(t+1)^n - t^n."""
    t, n = shape.t, shape.n
    return (t + 1) ** n - t**n


def iter_lines(shape: CubeShape, kind: str, prefix=()) -> Iterator[LinePattern]:
    """Dispatch on kind: 'geometric' or 'combinatorial'."""
    if kind == "geometric":
        return enumerate_geometric_lines(shape, prefix)
    if kind == "combinatorial":
        return enumerate_combinatorial_lines(shape, prefix)
    raise ValueError(f"unknown line kind {kind!r}")


def line_count(shape: CubeShape, kind: str) -> int:
    if kind == "geometric":
        return geometric_line_count(shape)
    if kind == "combinatorial":
        return combinatorial_line_count(shape)
    raise ValueError(f"unknown line kind {kind!r}")


def _rank_weights(shape: CubeShape) -> list:
    t = shape.t
    return [t**i for i in range(shape.n - 1, -1, -1)]


def _line_ranks(roles, t: int, weights) -> list:
    # ranks of the line's points in sequence order: base + i * step
    base = 0
    step = 0
    for w, r in zip(weights, roles):
        if r == FORWARD:
            step += w
        elif r == BACKWARD:
            step -= w
            base += w * (t - 1)
        else:
            base += w * r
    return [base + i * step for i in range(t)]


def line_ranks(lp: LinePattern, shape: CubeShape) -> list:
    """Ranks of the line's t points, in sequence order."""
    _check_pattern(lp, shape)
    return _line_ranks(lp.roles, shape.t, _rank_weights(shape))


def line_hypergraph(shape: CubeShape, kind: str = "geometric",
                    max_edges: int = 10**8) -> Hypergraph:
    """The cube as a hypergraph: vertices are point ranks, edges are lines."""
    expected = line_count(shape, kind)
    if expected > max_edges:
        raise ValueError(
            f"{expected} edges exceed max_edges={max_edges} at shape {shape}"
        )
    t = shape.t
    weights = _rank_weights(shape)
    edges = [
        tuple(sorted(_line_ranks(lp.roles, t, weights)))
        for lp in iter_lines(shape, kind)
    ]
    return Hypergraph(shape.cardinality, edges)


def ap_hypergraph(n: int, t: int) -> Hypergraph:
    """Arithmetic-progression hypergraph on [1, n], 0-indexed as value-1.

    Edges are the t-term progressions {a, a+d, ..., a+(t-1)d} with d >= 1.
    """
    if t < 3:
        raise ValueError(f"progression length t must be >= 3, got {t}")
    if n < t:
        raise ValueError(f"need n >= t, got n={n} t={t}")
    edges = []
    for d in range(1, (n - 1) // (t - 1) + 1):
        for a in range(1, n - (t - 1) * d + 1):
            edges.append(tuple(a - 1 + i * d for i in range(t)))
    return Hypergraph(n, edges)
