"""Not-all-equal constraint solver over boolean variables.

One clause is a triple of variables that must not all receive the same
value. This is exactly the clause form of 2-coloring a tournament without
a monochromatic cyclic triangle, and of the triangle-free-cut problem for
undirected graphs.

Propagation rule: once two variables of a clause are assigned equal, the
third is forced to the opposite value; once two are assigned unequal the
clause is satisfied. Branching picks the unassigned variable occurring in
the most clauses (ties to the smallest index). The first branching
decision is pinned to a single value, which is sound because complementing
every variable preserves all NAE clauses.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import BudgetExceeded

__all__ = ["solve_nae"]

_UNSET = -1


def solve_nae(
    num_vars: int,
    clauses: Sequence[tuple[int, int, int]],
    budget: Optional[int] = None,
) -> Optional[list[int]]:
    """Satisfying 0/1 assignment for the NAE triples, or None.

    Variables are 1..num_vars. ``budget`` caps the number of branching
    nodes; exhausting it raises BudgetExceeded (never returns None).
    """
    for c in clauses:
        if len(c) != 3 or len(set(c)) != 3:
            raise ValueError(f"clause {c} is not a triple of distinct variables")
        for v in c:
            if not 1 <= v <= num_vars:
                raise ValueError(f"variable {v} outside 1..{num_vars}")

    occurs: list[list[int]] = [[] for _ in range(num_vars + 1)]
    for idx, c in enumerate(clauses):
        for v in c:
            occurs[v].append(idx)

    assign = [_UNSET] * (num_vars + 1)
    by_degree = sorted(
        range(1, num_vars + 1), key=lambda v: (-len(occurs[v]), v)
    )
    nodes = 0

    def propagate(queue: list[int], trail: list[int]) -> bool:
        while queue:
            v = queue.pop()
            for ci in occurs[v]:
                a, b, c = clauses[ci]
                va, vb, vc = assign[a], assign[b], assign[c]
                unset = (va == _UNSET) + (vb == _UNSET) + (vc == _UNSET)
                if unset == 0:
                    if va == vb == vc:
                        return False
                    continue
                if unset != 1:
                    continue
                if va == _UNSET:
                    free, x, y = a, vb, vc
                elif vb == _UNSET:
                    free, x, y = b, va, vc
                else:
                    free, x, y = c, va, vb
                if x == y:
                    assign[free] = 1 - x
                    trail.append(free)
                    queue.append(free)
        return True

    def choose() -> Optional[int]:
        for v in by_degree:
            if assign[v] == _UNSET:
                return v
        return None

    def search(first: bool) -> bool:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExceeded("NAE search budget exhausted", nodes=nodes)
        v = choose()
        if v is None:
            return True
        values = (0,) if first else (0, 1)
        for value in values:
            trail = [v]
            assign[v] = value
            if propagate([v], trail) and search(False):
                return True
            for w in trail:
                assign[w] = _UNSET
        return False

    if search(True):
        return [0 if assign[v] == _UNSET else assign[v] for v in range(1, num_vars + 1)]
    return None
