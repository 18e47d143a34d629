"""Acyclic k-coloring of oriented graphs and the easy/hard classifier.

A proper k-coloring partitions the vertex set into k classes, each
inducing an acyclic subdigraph; for tournaments each class induces a
transitive subtournament. A pattern is *easy* exactly when it admits a
proper 2-coloring.

Solvers take explicit node budgets; exhausting one raises BudgetExceeded
instead of returning a (wrong) negative answer. Each invocation is
single-threaded and keeps its state on the stack, so concurrent calls on
shared immutable inputs are safe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import nae
from .digraphs import OrientedGraph, Tournament, tournament_from_bits, _bits
from .errors import BudgetExceeded

__all__ = [
    "Coloring",
    "acyclic_k_coloring",
    "nae_two_coloring",
    "chromatic_number",
    "classify",
    "verify_coloring",
    "cyclic_triangles",
    "brute_force_k_colorable",
    "smallest_non_two_colorable_tournament",
]


@dataclass(frozen=True)
class Coloring:
    """A vertex -> color assignment with colors 1..k."""

    assignment: tuple[int, ...]  # assignment[v-1] = color of vertex v
    k: int

    def color(self, v: int) -> int:
        return self.assignment[v - 1]

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.assignment, start=1):
            out[c - 1].append(v)
        return out


def verify_coloring(d: OrientedGraph, coloring: Coloring) -> bool:
    """Independent check: every color class induces an acyclic subdigraph."""
    if len(coloring.assignment) != d.n:
        return False
    for cls in coloring.classes():
        if cls and not d.induced(cls).is_acyclic():
            return False
    return True


def _class_stays_acyclic(d: OrientedGraph, members: int, v: int) -> bool:
    """Does class `members` (a bit mask) stay acyclic after adding v?

    Peels vertices with no in-neighbour inside the class (Kahn on masks).
    """
    mask = members | (1 << v)
    while mask:
        progressed = False
        for u in _bits(mask):
            if not (d.inn[u] & mask):
                mask &= ~(1 << u)
                progressed = True
        if not progressed:
            return False
    return True


def acyclic_k_coloring(
    d: OrientedGraph, k: int, budget: Optional[int] = None
) -> Optional[Coloring]:
    """A proper k-coloring if one exists, else None.

    Backtracking in vertex order 1..n with incremental per-class cycle
    detection. Symmetry is broken by pinning vertex 1 to color 1 and only
    opening one fresh class at a time, so the output is deterministic.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if d.n == 0:
        return Coloring((), k)
    masks = [0] * k
    assign = [0] * (d.n + 1)
    nodes = 0

    def place(v: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded("coloring search budget exhausted", nodes=nodes)
        if v > d.n:
            return True
        # vertex 1 is pinned to class 1; a fresh class may be opened only
        # as the next unused index, which factors the k! class symmetry out
        limit = 1 if v == 1 else min(used + 1, k)
        for c in range(limit):
            if _class_stays_acyclic(d, masks[c], v):
                masks[c] |= 1 << v
                assign[v] = c + 1
                if place(v + 1, max(used, c + 1)):
                    return True
                masks[c] &= ~(1 << v)
        return False

    if place(1, 0):
        return Coloring(tuple(assign[1:]), k)
    return None


def cyclic_triangles(t: Tournament) -> list[tuple[int, int, int]]:
    """All cyclic triples a->b->c->a, reported once with a = min."""
    out = []
    for a in t.vertices:
        later = ~((1 << (a + 1)) - 1)
        for b in _bits(t.out[a] & later):
            # c with b->c and c->a, c > a
            for c in _bits(t.out[b] & t.inn[a] & later):
                out.append((a, b, c))
    return out


def nae_two_coloring(
    t: Tournament, budget: Optional[int] = None
) -> Optional[Coloring]:
    """A 2-coloring with no monochromatic cyclic triangle, or None.

    Valid for tournaments only: there a class is transitive iff it spans no
    cyclic triangle, so propriety is exactly one not-all-equal constraint
    per cyclic triangle. For general oriented graphs this equivalence
    fails, hence the tournament precondition.
    """
    if not isinstance(t, Tournament):
        raise ValueError("nae_two_coloring requires a tournament")
    triples = cyclic_triangles(t)
    solution = nae.solve_nae(t.n, triples, budget=budget)
    if solution is None:
        return None
    coloring = Coloring(tuple(v + 1 for v in solution), 2)
    if not verify_coloring(t, coloring):
        raise AssertionError("NAE solver returned an improper coloring")
    return coloring


def chromatic_number(t: OrientedGraph, budget: Optional[int] = None) -> int:
    """Least k admitting a proper k-coloring."""
    if t.n == 0:
        return 0
    for k in range(1, t.n + 1):
        if acyclic_k_coloring(t, k, budget=budget) is not None:
            return k
    raise AssertionError("unreachable: n singleton classes are always proper")


def classify(h: OrientedGraph, budget: Optional[int] = None) -> str:
    """'easy' iff the pattern has a proper 2-coloring, else 'hard'."""
    return "easy" if acyclic_k_coloring(h, 2, budget=budget) is not None else "hard"


def brute_force_k_colorable(d: OrientedGraph, k: int) -> bool:
    """Oracle: scan all k^n class assignments for a proper one."""
    if d.n == 0:
        return True
    for assignment in itertools.product(range(1, k + 1), repeat=d.n):
        coloring = Coloring(assignment, k)
        if verify_coloring(d, coloring):
            return True
    return False


@lru_cache(maxsize=1)
def smallest_non_two_colorable_tournament() -> Tournament:
    """First non-2-colorable tournament in the (n, bit-code) scan order.

    Scans vertex counts upward and, within each n, tournaments in the
    lexicographic bit order of ``tournament_from_bits``. The minimum n is
    discovered, not assumed. Cached for the process lifetime.
    """
    n = 1
    while True:
        for bits in range(1 << (n * (n - 1) // 2)):
            t = tournament_from_bits(n, bits)
            if not _fast_two_colorable(t):
                return t
        n += 1


def _fast_two_colorable(t: Tournament) -> bool:
    """2-colorability via direct scan over assignments of triangle vertices.

    Only vertices lying on cyclic triangles are constrained; everything
    else can always be absorbed into either class.
    """
    triples = cyclic_triangles(t)
    if not triples:
        return True
    masks = [(1 << a) | (1 << b) | (1 << c) for a, b, c in triples]
    involved = sorted({v for tr in triples for v in tr})
    m = len(involved)
    # assignment bit i corresponds to vertex involved[i]
    for code in range(1 << (m - 1)):  # last involved vertex pinned to class 0
        chosen = 0
        for i in range(m):
            if (code >> i) & 1:
                chosen |= 1 << involved[i]
        ok = True
        for mask in masks:
            x = mask & chosen
            if x == mask or x == 0:
                ok = False
                break
        if ok:
            return True
    return False
