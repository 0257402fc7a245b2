"""DIMACS CNF export of the balanced rainbow-free coloring problem.

Vertex selector variables v(p,c) = p*k + c + 1 pick one color per vertex;
each color class is forced to size exactly N/k with sequential-counter
cardinality constraints; each edge gets a clause over same-color-pair
variables y(p,q,c) defined as v(p,c) AND v(q,c), so satisfying assignments
correspond exactly to balanced rainbow-free k-colorings.

Includes a small complete DPLL solver so desk-scale instances can be
decided without an external solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .colorings import Coloring
from .hypergraph import Hypergraph

# Pairwise at-most-one is fine for few colors; ladder encoding above this.
_PAIRWISE_AMO_MAX = 8


class Cnf:
    def __init__(self):
        self.num_vars = 0
        self.clauses = []

    def new_var(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def add(self, clause) -> None:
        self.clauses.append(tuple(clause))

    def to_dimacs(self) -> str:
        out = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        for cl in self.clauses:
            out.append(" ".join(str(l) for l in cl) + " 0")
        return "\n".join(out) + "\n"


def parse_dimacs(text: str) -> Cnf:
    cnf = Cnf()
    for raw in text.splitlines():
        s = raw.strip()
        if not s or s.startswith("c"):
            continue
        if s.startswith("p"):
            parts = s.split()
            if parts[:2] != ["p", "cnf"]:
                raise ValueError(f"bad DIMACS header {s!r}")
            cnf.num_vars = int(parts[2])
            continue
        lits = [int(x) for x in s.split()]
        if lits[-1] != 0:
            raise ValueError(f"clause not 0-terminated: {s!r}")
        cnf.add(lits[:-1])
    return cnf


def add_at_most(cnf: Cnf, lits, bound: int) -> list:
    """Sequential-counter encoding of sum(lits) <= bound.

    Returns the register variables s[i][j] (s[i][j] true when at least j+1
    of the first i+1 literals hold), empty when no registers are needed.
    """
    m = len(lits)
    if bound >= m:
        return []
    if bound == 0:
        for x in lits:
            cnf.add((-x,))
        return []
    regs = [[cnf.new_var() for _ in range(bound)] for _ in range(m - 1)]
    cnf.add((-lits[0], regs[0][0]))
    for j in range(1, bound):
        cnf.add((-regs[0][j],))
    for i in range(1, m - 1):
        cnf.add((-lits[i], regs[i][0]))
        cnf.add((-regs[i - 1][0], regs[i][0]))
        for j in range(1, bound):
            cnf.add((-lits[i], -regs[i - 1][j - 1], regs[i][j]))
            cnf.add((-regs[i - 1][j], regs[i][j]))
        cnf.add((-lits[i], -regs[i - 1][bound - 1]))
    cnf.add((-lits[m - 1], -regs[m - 2][bound - 1]))
    return regs


def add_exactly_one(cnf: Cnf, lits) -> list:
    cnf.add(tuple(lits))
    if len(lits) <= _PAIRWISE_AMO_MAX:
        for a, b in combinations(lits, 2):
            cnf.add((-a, -b))
        return []
    return add_at_most(cnf, list(lits), 1)


@dataclass
class CnfEncoding:
    """A CNF instance plus enough structure to evaluate auxiliaries."""

    cnf: Cnf
    vertex_count: int
    k: int
    pair_vars: dict  # (p, q, c) -> var
    counters: list = field(default_factory=list)  # (lits, regs) per at-most call

    def vertex_var(self, p: int, c: int) -> int:
        return p * self.k + c + 1


def encode_balanced_rainbow_free(h: Hypergraph, k: int) -> CnfEncoding:
    n = h.vertex_count
    if k < 2:
        raise ValueError(f"CNF encoding needs k >= 2, got {k}")
    if n % k != 0:
        raise ValueError(f"k={k} does not divide vertex count {n}")
    cap = n // k
    cnf = Cnf()
    cnf.num_vars = n * k  # selector block comes first
    enc = CnfEncoding(cnf=cnf, vertex_count=n, k=k, pair_vars={})

    for p in range(n):
        regs = add_exactly_one(cnf, [enc.vertex_var(p, c) for c in range(k)])
        if regs:
            enc.counters.append(([enc.vertex_var(p, c) for c in range(k)], 1, regs))

    for c in range(k):
        lits = [enc.vertex_var(p, c) for p in range(n)]
        regs = add_at_most(cnf, lits, cap)
        if regs:
            enc.counters.append((lits, cap, regs))
        neg = [-x for x in lits]
        regs = add_at_most(cnf, neg, n - cap)  # at least cap positives
        if regs:
            enc.counters.append((neg, n - cap, regs))

    for e in h.edges:
        clause = []
        for p, q in combinations(e, 2):
            for c in range(k):
                y = enc.pair_vars.get((p, q, c))
                if y is None:
                    y = cnf.new_var()
                    enc.pair_vars[(p, q, c)] = y
                    vp, vq = enc.vertex_var(p, c), enc.vertex_var(q, c)
                    cnf.add((-y, vp))
                    cnf.add((-y, vq))
                    cnf.add((-vp, -vq, y))
                clause.append(y)
        cnf.add(clause)
    return enc


def export_cnf(h: Hypergraph, k: int, dest) -> tuple:
    """Write the DIMACS file; returns (num_vars, num_clauses)."""
    enc = encode_balanced_rainbow_free(h, k)
    text = enc.cnf.to_dimacs()
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text, encoding="utf-8")
    return enc.cnf.num_vars, len(enc.cnf.clauses)


def model_from_coloring(enc: CnfEncoding, coloring: Coloring) -> list:
    """Extend a coloring to a full assignment (index = var, True/False).

    Registers get counting semantics: s[i][j] is true iff at least j+1 of
    the first i+1 literals hold.  If the coloring is balanced and rainbow
    free, the result satisfies every clause.
    """
    if coloring.num_vertices != enc.vertex_count or coloring.k != enc.k:
        raise ValueError("coloring does not match the encoding")
    assign = [False] * (enc.cnf.num_vars + 1)
    for p, c in enumerate(coloring.colors):
        assign[enc.vertex_var(p, c)] = True

    def lit_true(l: int) -> bool:
        return assign[l] if l > 0 else not assign[-l]

    for (p, q, c), y in enc.pair_vars.items():
        assign[y] = coloring.colors[p] == c and coloring.colors[q] == c
    for lits, _bound, regs in enc.counters:
        count = 0
        for i in range(len(regs)):
            if lit_true(lits[i]):
                count += 1
            for j in range(len(regs[i])):
                assign[regs[i][j]] = count >= j + 1
    return assign


def check_model(cnf: Cnf, assign) -> bool:
    """Does the assignment satisfy every clause?"""
    for cl in cnf.clauses:
        if not any(assign[l] if l > 0 else not assign[-l] for l in cl):
            return False
    return True


def solve(cnf: Cnf):
    """Complete DPLL with two watched literals.

    Returns a satisfying assignment (index = var) or None if unsatisfiable.
    Meant for desk-scale instances, not industrial ones.
    """
    num_vars = cnf.num_vars
    clauses = []
    for cl in cnf.clauses:
        lits = tuple(dict.fromkeys(cl))
        if any(-l in lits for l in lits):
            continue  # tautology
        if not lits:
            return None
        clauses.append(list(lits))

    assign = [0] * (num_vars + 1)  # 0 unassigned, 1 true, -1 false

    def value(l: int) -> int:
        v = assign[abs(l)]
        return v if l > 0 else -v

    watches = {}
    units = []
    for ci, cl in enumerate(clauses):
        if len(cl) == 1:
            units.append(cl[0])
            continue
        for l in cl[:2]:
            watches.setdefault(l, []).append(ci)

    trail = []

    def propagate(queue) -> bool:
        while queue:
            lit = queue.pop()
            val = value(lit)
            if val == 1:
                continue
            if val == -1:
                return False
            assign[abs(lit)] = 1 if lit > 0 else -1
            trail.append(abs(lit))
            falsified = -lit
            watching = watches.get(falsified)
            if not watching:
                continue
            i = 0
            while i < len(watching):
                ci = watching[i]
                cl = clauses[ci]
                if cl[0] == falsified:
                    cl[0], cl[1] = cl[1], cl[0]
                if value(cl[0]) == 1:
                    i += 1
                    continue
                # find a replacement watch for slot 1
                for pos in range(2, len(cl)):
                    if value(cl[pos]) != -1:
                        cl[1], cl[pos] = cl[pos], cl[1]
                        watches.setdefault(cl[1], []).append(ci)
                        watching[i] = watching[-1]
                        watching.pop()
                        break
                else:
                    v0 = value(cl[0])
                    if v0 == -1:
                        return False
                    if v0 == 0:
                        queue.append(cl[0])
                    i += 1
        return True

    # Branch in variable index order, positive first.  The selector block
    # comes first in our encodings, so this walks vertices in order and lets
    # the exactly-one and pair clauses propagate, which behaves far better
    # here than frequency-based ordering.
    decisions = []  # (var, polarity_tried_second?, trail length before)

    def backtrack_to(mark: int) -> None:
        while len(trail) > mark:
            assign[trail.pop()] = 0

    queue = list(units)
    while True:
        if not propagate(queue):
            # conflict: flip the most recent decision with an untried polarity
            while decisions:
                var, flipped, mark = decisions.pop()
                backtrack_to(mark)
                if not flipped:
                    decisions.append((var, True, mark))
                    queue = [-var]
                    break
            else:
                return None
            continue
        var = next((v for v in range(1, num_vars + 1) if assign[v] == 0), None)
        if var is None:
            return [False] + [assign[v] == 1 for v in range(1, num_vars + 1)]
        decisions.append((var, False, len(trail)))
        queue = [var]
