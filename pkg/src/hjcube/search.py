"""Exhaustive search for balanced rainbow-free k-colorings of hypergraphs.

The search backtracks over vertices in a static order (decreasing edge
degree, ties by index), assigning colors in increasing index and pruning on
full color classes and on edges that are forced to become rainbow.  An
exhausted search is a proof that no balanced rainbow-free k-coloring
exists.

Work splits into subtrees at a fixed depth; subtree results merge in split
order, so status, witness, and node counts are identical for any worker
count when the deterministic option is on.
"""

from __future__ import annotations

import json
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

from .colorings import Coloring
from .hypergraph import Hypergraph
from .verify import count_rainbow_edges, count_rainbow_lines


class SearchStatus(str, Enum):
    WITNESS_FOUND = "witness_found"
    EXHAUSTED_NO_WITNESS = "exhausted_no_witness"
    NODE_LIMIT_REACHED = "node_limit_reached"


@dataclass(frozen=True)
class SearchOptions:
    symmetry_fix_first_vertex: bool = True
    node_limit: "int | None" = None
    threads: int = 1
    deterministic: bool = True

    def __post_init__(self) -> None:
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be >= 1")


@dataclass(frozen=True)
class SearchOutcome:
    status: SearchStatus
    witness: "Coloring | None"
    nodes_explored: int

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "nodes_explored": self.nodes_explored,
            "witness": list(self.witness.colors) if self.witness else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# Subtrees split after this many assigned vertices.  Fixed so that node
# accounting does not depend on the worker count.
_SPLIT_DEPTH = 2


class _Problem:
    """Shared read-only search context."""

    def __init__(self, h: Hypergraph, k: int, symmetry: bool):
        n = h.vertex_count
        degree = [0] * n
        for e in h.edges:
            for v in e:
                degree[v] += 1
        self.h = h
        self.k = k
        self.cap = n // k
        self.n = n
        self.order = sorted(range(n), key=lambda v: (-degree[v], v))
        self.edges_of = [[] for _ in range(n)]
        for ei, e in enumerate(h.edges):
            for v in e:
                self.edges_of[v].append(ei)
        self.symmetry = symmetry

    def colors_at(self, pos: int):
        if pos == 0 and self.symmetry:
            return (0,)
        return range(self.k)


def _place(pb: _Problem, colors, counts, v: int, c: int) -> bool:
    """Tentatively color v with c; undo and report False if a prune fires.

    Prunes when an edge through v is completed rainbow, or has one hole
    left, its assigned vertices pairwise distinct, and every color whose
    class is not yet full would keep them distinct.
    """
    colors[v] = c
    counts[c] += 1
    edges = pb.h.edges
    cap = pb.cap
    k = pb.k
    for ei in pb.edges_of[v]:
        holes = 0
        seen = 0
        distinct = True
        for u in edges[ei]:
            cu = colors[u]
            if cu < 0:
                holes += 1
                if holes > 1:
                    break
            else:
                bit = 1 << cu
                if seen & bit:
                    distinct = False
                    break
                seen |= bit
        if not distinct or holes > 1:
            continue
        if holes == 0:
            pass  # completed edge with all colors distinct: rainbow
        elif any(counts[cc] < cap and (seen >> cc) & 1 for cc in range(k)):
            continue  # the hole can still repeat an edge color
        colors[v] = -1
        counts[c] -= 1
        return False
    return True


def _unplace(colors, counts, v: int, c: int) -> None:
    colors[v] = -1
    counts[c] -= 1


class _Budget:
    """Node counter with an optional hard limit."""

    def __init__(self, limit=None, start=0):
        self.nodes = start
        self.limit = limit

    def spend(self) -> bool:
        if self.limit is not None and self.nodes >= self.limit:
            return False
        self.nodes += 1
        return True


def _enumerate_prefixes(pb: _Problem, depth: int, budget: _Budget):
    """All feasible color tuples for the first `depth` order positions.

    Visits them in DFS order, spending budget like the main search; the
    chunk list is therefore a deterministic, ordered partition of the tree.
    Returns None if the budget ran out.
    """
    colors = [-1] * pb.n
    counts = [0] * pb.k
    prefixes = []

    def rec(pos: int) -> bool:
        if pos == depth:
            prefixes.append(tuple(colors[pb.order[i]] for i in range(depth)))
            return True
        v = pb.order[pos]
        for c in pb.colors_at(pos):
            if counts[c] >= pb.cap:
                continue
            if not budget.spend():
                return False
            if not _place(pb, colors, counts, v, c):
                continue
            ok = rec(pos + 1)
            _unplace(colors, counts, v, c)
            if not ok:
                return False
        return True

    if not rec(0):
        return None
    return prefixes


class _Aborted(Exception):
    pass


def _search_chunk(pb: _Problem, prefix, budget: _Budget, should_abort=None):
    """Run one subtree to its own termination.

    Returns (witness_colors | None, limit_hit).  Raises _Aborted when the
    abort callback fires; aborted chunks are discarded by the merge.
    """
    colors = [-1] * pb.n
    counts = [0] * pb.k
    for pos, c in enumerate(prefix):
        if not _place(pb, colors, counts, pb.order[pos], c):
            raise RuntimeError("chunk prefix no longer feasible")
    start = len(prefix)

    def rec(pos: int):
        if pos == pb.n:
            return list(colors)
        if should_abort is not None and should_abort():
            raise _Aborted()
        v = pb.order[pos]
        for c in pb.colors_at(pos):
            if counts[c] >= pb.cap:
                continue
            if not budget.spend():
                return "limit"
            if not _place(pb, colors, counts, v, c):
                continue
            found = rec(pos + 1)
            _unplace(colors, counts, v, c)
            if found is not None:
                return found
        return None

    result = rec(start)
    if result == "limit":
        return None, True
    return result, False


def _finish(pb: _Problem, witness_colors, nodes: int) -> SearchOutcome:
    if witness_colors is None:
        return SearchOutcome(SearchStatus.EXHAUSTED_NO_WITNESS, None, nodes)
    witness = Coloring(k=pb.k, colors=witness_colors)
    if not _witness_ok(pb.h, witness):
        raise RuntimeError("search produced an invalid witness")
    return SearchOutcome(SearchStatus.WITNESS_FOUND, witness, nodes)


def _witness_ok(h: Hypergraph, witness: Coloring) -> bool:
    from .verify import is_balanced

    return is_balanced(witness) and count_rainbow_edges(witness, h) == 0


def exists_balanced_rainbow_free(h: Hypergraph, k: int,
                                 opts: "SearchOptions | None" = None) -> SearchOutcome:
    """Decide whether a balanced rainbow-free k-coloring of h exists.

    Complete: EXHAUSTED_NO_WITNESS proves nonexistence.  Any returned
    witness is re-verified (balanced, zero rainbow edges) before return.
    """
    if opts is None:
        opts = SearchOptions()
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if h.vertex_count % k != 0:
        raise ValueError(f"k={k} does not divide vertex count {h.vertex_count}")
    pb = _Problem(h, k, opts.symmetry_fix_first_vertex)
    depth = min(_SPLIT_DEPTH, pb.n)
    budget = _Budget(opts.node_limit)
    prefixes = _enumerate_prefixes(pb, depth, budget)
    if prefixes is None:
        return SearchOutcome(SearchStatus.NODE_LIMIT_REACHED, None, budget.nodes)

    # A node limit needs sequential accounting to stay deterministic.
    if opts.threads <= 1 or opts.node_limit is not None:
        for prefix in prefixes:
            witness_colors, limit_hit = _search_chunk(pb, prefix, budget)
            if limit_hit:
                return SearchOutcome(SearchStatus.NODE_LIMIT_REACHED, None, budget.nodes)
            if witness_colors is not None:
                return _finish(pb, witness_colors, budget.nodes)
        return _finish(pb, None, budget.nodes)
    return _parallel_search(pb, prefixes, budget.nodes, opts)


def _parallel_search(pb: _Problem, prefixes, base_nodes: int,
                     opts: SearchOptions) -> SearchOutcome:
    lock = threading.Lock()
    state = {"winner": len(prefixes)}  # lowest chunk index with a witness so far

    def run(index_prefix):
        index, prefix = index_prefix
        budget = _Budget()

        if opts.deterministic:
            # Chunks after the current best winner are dead weight; earlier
            # ones must still run to their own termination.
            def should_abort() -> bool:
                return index > state["winner"]
        else:
            def should_abort() -> bool:
                return state["winner"] < len(prefixes)

        try:
            witness_colors, _ = _search_chunk(pb, prefix, budget, should_abort)
        except _Aborted:
            return index, None, budget.nodes, True
        if witness_colors is not None:
            with lock:
                state["winner"] = min(state["winner"], index)
        return index, witness_colors, budget.nodes, False

    with ThreadPoolExecutor(max_workers=opts.threads) as pool:
        results = list(pool.map(run, enumerate(prefixes)))

    if opts.deterministic:
        winner = next((i for i, (_, w, _, _) in enumerate(results) if w is not None),
                      None)
        nodes = base_nodes
        for index, witness_colors, chunk_nodes, aborted in results:
            if winner is not None and index > winner:
                continue
            if aborted:
                raise RuntimeError("chunk at or before the winner was aborted")
            nodes += chunk_nodes
        witness_colors = results[winner][1] if winner is not None else None
        return _finish(pb, witness_colors, nodes)

    nodes = base_nodes + sum(r[2] for r in results)
    witness_colors = next((w for _, w, _, _ in results if w is not None), None)
    return _finish(pb, witness_colors, nodes)


def divisors_descending(n: int) -> list:
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return divs[::-1]


def chi_b_search(h: Hypergraph, opts: "SearchOptions | None" = None):
    """Yield (k, outcome) for each divisor of N tried, largest first.

    Stops after the first k that admits a witness.  No monotonicity holds
    between divisors, so every larger divisor is searched to exhaustion.
    """
    for k in divisors_descending(h.vertex_count):
        outcome = exists_balanced_rainbow_free(h, k, opts)
        yield k, outcome
        if outcome.status is SearchStatus.WITNESS_FOUND:
            return


def balanced_upper_chromatic(h: Hypergraph,
                             opts: "SearchOptions | None" = None) -> tuple:
    """Largest k dividing N with a balanced rainbow-free k-coloring, plus a witness."""
    for k, outcome in chi_b_search(h, opts):
        if outcome.status is SearchStatus.WITNESS_FOUND:
            return k, outcome.witness
        if outcome.status is SearchStatus.NODE_LIMIT_REACHED:
            raise RuntimeError(f"node limit reached while searching k={k}")
    raise ValueError("no k admits a balanced rainbow-free coloring "
                     "(the hypergraph has a single-vertex edge)")


def chi_b_lower_bound_check(shape, threads: int = 1) -> bool:
    """Confirm the halving coloring realizes (t/2)^n colors rainbow-free.

    Constructs it and verifies balanced plus a zero-rainbow geometric scan;
    False would indicate an implementation bug.
    """
    from .colorings import halving_coloring
    from .verify import is_balanced

    if shape.t % 2 != 0:
        raise ValueError(f"lower-bound check needs even t, got {shape.t}")
    if shape.t < 4:
        raise ValueError("lower-bound check needs t >= 4")
    c = halving_coloring(shape)
    return is_balanced(c) and count_rainbow_lines(c, "geometric", threads) == 0


def count_balanced_colorings(n: int, k: int) -> int:
    """Number of balanced k-colorings of n vertices: n! / ((n/k)!)^k."""
    if k < 1 or n % k != 0:
        raise ValueError(f"k={k} must divide n={n}")
    return math.factorial(n) // math.factorial(n // k) ** k
