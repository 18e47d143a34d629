"""The 7-vertex gadget, the triangle-free-cut reduction, and the
colorability lift.

The reduction turns an undirected graph G into a tournament T(G) that is
2-colorable exactly when G has a vertex 2-coloring without a
monochromatic triangle. Per triangle of G it spends one cyclic triple of
fresh vertices plus three gadget copies whose endpoints are forced to
share a color in every proper 2-coloring; everything else is oriented
forward so no other cyclic triangle can go monochromatic.

The gadget's edge list is hard-coded, which makes it the riskiest
constant in this module; the constructor therefore re-validates every
property the hardness argument leans on (the two cyclic triples through
w, the eight joining triples, the endpoint neighbourhoods) before the
gadget is ever used.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import nae
from .coloring import Coloring, cyclic_triangles, verify_coloring
from .digraphs import Tournament
from .errors import AuditError
from .orderedhom import LabeledGraph

__all__ = [
    "GADGET_NAMES",
    "Gadget",
    "GadgetReport",
    "ReductionOutput",
    "ReductionCheck",
    "gadget",
    "verify_gadget",
    "graph_triangles",
    "reduce_graph",
    "has_triangle_free_cut",
    "check_reduction",
    "lift",
]

GADGET_NAMES = ("u", "v", "w", "a", "b", "c", "d")

# (x, y) means x -> y
_GADGET_EDGES = (
    ("u", "v"), ("u", "w"), ("w", "v"), ("u", "d"), ("u", "c"),
    ("v", "d"), ("v", "c"), ("b", "u"), ("a", "u"), ("b", "v"),
    ("a", "v"), ("c", "d"), ("a", "b"), ("d", "b"), ("d", "a"),
    ("c", "a"), ("c", "b"), ("w", "c"), ("d", "w"), ("w", "a"),
    ("b", "w"),
)


@dataclass(frozen=True)
class Gadget:
    """The fixed 7-vertex tournament with named vertices u,v,w,a,b,c,d
    mapped to 1..7 in that order."""

    tournament: Tournament

    def vertex(self, name: str) -> int:
        return GADGET_NAMES.index(name) + 1

    def name(self, vertex: int) -> str:
        return GADGET_NAMES[vertex - 1]

    def has_edge(self, x: str, y: str) -> bool:
        return self.tournament.has_edge(self.vertex(x), self.vertex(y))


def gadget() -> Gadget:
    """The gadget, re-validated against the properties the reduction uses."""
    index = {name: i + 1 for i, name in enumerate(GADGET_NAMES)}
    t = Tournament(7, ((index[x], index[y]) for x, y in _GADGET_EDGES))
    g = Gadget(t)

    def cyclic(x: str, y: str, z: str) -> bool:
        return (
            (g.has_edge(x, y) and g.has_edge(y, z) and g.has_edge(z, x))
            or (g.has_edge(x, z) and g.has_edge(z, y) and g.has_edge(y, x))
        )

    if len(t.edges) != 21:
        raise AuditError("gadget must have exactly 21 edges")
    if not cyclic("a", "b", "w") or not cyclic("c", "d", "w"):
        raise AuditError("gadget triples through w must be cyclic")
    for x in ("a", "b"):
        for y in ("c", "d"):
            if not cyclic("u", x, y) or not cyclic("v", x, y):
                raise AuditError(f"joining triple through {x},{y} not cyclic")
    in_u = {g.name(p) for p in t.vertices if t.has_edge(p, index["u"])}
    out_v = {g.name(p) for p in t.vertices if t.has_edge(index["v"], p)}
    if in_u != {"a", "b"} or out_v != {"c", "d"}:
        raise AuditError("endpoint neighbourhoods are wrong")
    return g


@dataclass(frozen=True)
class GadgetReport:
    """Outcome of the 128-assignment sweep."""

    proper_colorings: int
    endpoints_always_equal: bool
    witness: Coloring  # u,v,w one color, a,b,c,d the other

    @property
    def ok(self) -> bool:
        return self.endpoints_always_equal and self.proper_colorings > 0


def verify_gadget() -> GadgetReport:
    """Sweep all 2^7 vertex 2-colorings of the gadget.

    Asserts that some proper coloring puts u,v,w on one side with all of
    N-(u) and N+(v) opposite, and that every proper coloring gives u and
    v equal colors. Violations raise with the offending assignment.
    """
    g = gadget()
    t = g.tournament
    triples = cyclic_triangles(t)
    masks = [(1 << x) | (1 << y) | (1 << z) for x, y, z in triples]
    u, v = g.vertex("u"), g.vertex("v")
    proper = 0
    witness: Optional[Coloring] = None
    always_equal = True
    for code in range(1 << 7):
        chosen = 0
        for i in range(7):
            if (code >> i) & 1:
                chosen |= 1 << (i + 1)
        ok = True
        for mask in masks:
            x = mask & chosen
            if x == mask or x == 0:
                ok = False
                break
        if not ok:
            continue
        proper += 1
        if ((chosen >> u) & 1) != ((chosen >> v) & 1):
            always_equal = False
            raise AuditError(
                f"proper coloring {code:07b} separates the endpoints"
            )
    target = Coloring((1, 1, 1, 2, 2, 2, 2), 2)
    if not verify_coloring(t, target):
        raise AuditError("the u,v,w / a,b,c,d split is not proper")
    for name in ("a", "b", "c", "d"):
        if target.color(g.vertex(name)) == target.color(u):
            raise AuditError("witness does not separate the neighbourhoods")
    witness = target
    return GadgetReport(
        proper_colorings=proper,
        endpoints_always_equal=always_equal,
        witness=witness,
    )


# -- the reduction -------------------------------------------------------


def graph_triangles(g: LabeledGraph) -> list[tuple[int, int, int]]:
    """Triangles of an undirected graph, lexicographic on sorted triples."""
    out = []
    vs = g.vertices
    for a, b, c in itertools.combinations(vs, 3):
        if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c):
            out.append((a, b, c))
    return out


@dataclass(frozen=True)
class ReductionOutput:
    """The tournament T(G) with its vertex roles.

    Layout on 1..n+18m: the n spine vertices come first; then per
    triangle a cyclic triple of size 3; then per triangle three 5-vertex
    gadget blocks in the order of the triangle's sorted vertices, each
    block listing (w, a, b, c, d).
    """

    graph: LabeledGraph
    triangles: tuple[tuple[int, int, int], ...]
    tournament: Tournament

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return len(self.triangles)

    def y_vertex(self, i: int) -> int:
        """Spine vertex of the i-th smallest graph label (1-based)."""
        if not 1 <= i <= self.n:
            raise ValueError("spine index out of range")
        return i

    def z_vertex(self, t: int, r: int) -> int:
        """r-th vertex (1..3) of triangle t's cyclic triple (1-based t)."""
        if not (1 <= t <= self.m and 1 <= r <= 3):
            raise ValueError("triple index out of range")
        return self.n + 3 * (t - 1) + r

    def k_block(self, t: int, r: int) -> tuple[int, ...]:
        """Gadget block (w,a,b,c,d) for triangle t and its r-th vertex."""
        if not (1 <= t <= self.m and 1 <= r <= 3):
            raise ValueError("block index out of range")
        base = self.n + 3 * self.m + 15 * (t - 1) + 5 * (r - 1)
        return tuple(range(base + 1, base + 6))

    def y_vertices(self) -> range:
        return range(1, self.n + 1)

    def z_vertices(self) -> range:
        return range(self.n + 1, self.n + 3 * self.m + 1)

    def k_vertices(self) -> range:
        return range(self.n + 3 * self.m + 1, self.n + 18 * self.m + 1)

    def role_lines(self) -> list[str]:
        lines = [f"spine: {self.n}", f"triangles: {self.m}"]
        labels = self.graph.vertices
        for t, tri in enumerate(self.triangles, start=1):
            lines.append(f"triangle {t}: {tri[0]} {tri[1]} {tri[2]}")
            for r in range(1, 4):
                block = " ".join(str(v) for v in self.k_block(t, r))
                lines.append(
                    f"gadget {t}.{r}: u={labels.index(tri[r-1]) + 1} "
                    f"v={self.z_vertex(t, r)} block={block}"
                )
        return lines


def reduce_graph(g: LabeledGraph) -> ReductionOutput:
    """Assemble the tournament T(G).

    Deterministic: triangles are enumerated lexicographically, the spine
    follows the sorted graph labels, and all unscripted cross pairs point
    spine -> triples, spine -> blocks, blocks -> triples.
    """
    labels = g.vertices
    n = g.n
    pos = {lab: i + 1 for i, lab in enumerate(labels)}
    triangles = tuple(graph_triangles(g))
    m = len(triangles)

    def z_vertex(t: int, r: int) -> int:
        return n + 3 * (t - 1) + r

    def k_block(t: int, r: int) -> tuple[int, ...]:
        base = n + 3 * m + 15 * (t - 1) + 5 * (r - 1)
        return tuple(range(base + 1, base + 6))

    y_range = range(1, n + 1)
    z_range = range(n + 1, n + 3 * m + 1)
    k_range = range(n + 3 * m + 1, n + 18 * m + 1)

    edges: set[tuple[int, int]] = set()

    def add(x: int, y: int) -> None:
        if (y, x) in edges:
            raise AuditError(f"conflicting orientation for pair ({x},{y})")
        edges.add((x, y))

    # spine is transitive
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            add(i, j)
    # cyclic triple per triangle, earlier triples beat later ones
    for t in range(1, m + 1):
        z1, z2, z3 = (z_vertex(t, r) for r in (1, 2, 3))
        add(z1, z2)
        add(z2, z3)
        add(z3, z1)
        for s in range(1, t):
            for zs in (z_vertex(s, r) for r in (1, 2, 3)):
                for zt in (z1, z2, z3):
                    add(zs, zt)
    # spine beats all triples
    for y in y_range:
        for z in z_range:
            add(y, z)

    gadget_pairs_yk: set[tuple[int, int]] = set()
    gadget_pairs_kz: set[tuple[int, int]] = set()
    for t in range(1, m + 1):
        tri = triangles[t - 1]
        for r in range(1, 4):
            u_vertex = pos[tri[r - 1]]
            v_vertex = z_vertex(t, r)
            block = k_block(t, r)
            place = {
                "u": u_vertex,
                "v": v_vertex,
                "w": block[0],
                "a": block[1],
                "b": block[2],
                "c": block[3],
                "d": block[4],
            }
            for x, y in _GADGET_EDGES:
                px, py = place[x], place[y]
                if x == "u" and y == "v":
                    continue  # already oriented by spine -> triples
                add(px, py)
                if "u" in (x, y):
                    key = (min(px, py), max(px, py))
                    gadget_pairs_yk.add(key)
                if "v" in (x, y):
                    key = (min(px, py), max(px, py))
                    gadget_pairs_kz.add(key)
        # the three blocks of one triangle are ordered forward
        for r in range(1, 4):
            for s in range(r + 1, 4):
                for x in k_block(t, r):
                    for y in k_block(t, s):
                        add(x, y)
    # earlier triangles' block groups beat later ones
    for s in range(1, m + 1):
        for t in range(s + 1, m + 1):
            for x in range(k_block(s, 1)[0], k_block(s, 3)[-1] + 1):
                for y in range(k_block(t, 1)[0], k_block(t, 3)[-1] + 1):
                    add(x, y)
    # all remaining spine-block pairs point forward
    for y in y_range:
        for kk in k_range:
            key = (min(y, kk), max(y, kk))
            if key not in gadget_pairs_yk:
                add(y, kk)
    # all remaining block-triple pairs point from blocks to triples
    for z in z_range:
        for kk in k_range:
            key = (min(z, kk), max(z, kk))
            if key not in gadget_pairs_kz:
                add(kk, z)

    t_out = Tournament(n + 18 * m, edges)
    return ReductionOutput(graph=g, triangles=triangles, tournament=t_out)


def has_triangle_free_cut(
    g: LabeledGraph, budget: Optional[int] = None
) -> Optional[Coloring]:
    """A 2-coloring of the graph with no monochromatic triangle, or None.

    One NAE constraint per triangle; positions follow the sorted labels.
    """
    triangles = graph_triangles(g)
    pos = {lab: i + 1 for i, lab in enumerate(g.vertices)}
    clauses = [(pos[a], pos[b], pos[c]) for a, b, c in triangles]
    solution = nae.solve_nae(g.n, clauses, budget=budget)
    if solution is None:
        return None
    coloring = Coloring(tuple(x + 1 for x in solution), 2)
    for a, b, c in triangles:
        if coloring.color(pos[a]) == coloring.color(pos[b]) == coloring.color(pos[c]):
            raise AuditError("solver returned a monochromatic triangle")
    return coloring


@dataclass(frozen=True)
class ReductionCheck:
    """Agreement verdict between the cut problem and the tournament side."""

    reduction: ReductionOutput
    cut: Optional[Coloring]
    tournament_coloring: Optional[Coloring]
    lifted_cut_valid: Optional[bool]

    @property
    def agree(self) -> bool:
        return (self.cut is not None) == (self.tournament_coloring is not None)


def check_reduction(
    g: LabeledGraph, budget: Optional[int] = None
) -> ReductionCheck:
    """Solve both sides and, when the tournament side is colorable, lift
    the coloring back to a cut of the graph and validate it."""
    from .coloring import nae_two_coloring

    reduction = reduce_graph(g)
    cut = has_triangle_free_cut(g, budget=budget)
    tcol = nae_two_coloring(reduction.tournament, budget=budget)
    lifted_valid: Optional[bool] = None
    if tcol is not None:
        lifted = Coloring(
            tuple(tcol.color(reduction.y_vertex(i)) for i in range(1, g.n + 1)),
            2,
        )
        pos = {lab: i + 1 for i, lab in enumerate(g.vertices)}
        lifted_valid = all(
            len(
                {
                    lifted.color(pos[a]),
                    lifted.color(pos[b]),
                    lifted.color(pos[c]),
                }
            )
            > 1
            for a, b, c in reduction.triangles
        )
        if not lifted_valid:
            raise AuditError("lifted coloring is not a triangle-free cut")
    return ReductionCheck(
        reduction=reduction,
        cut=cut,
        tournament_coloring=tcol,
        lifted_cut_valid=lifted_valid,
    )


def lift(t: Tournament, k: int) -> Tournament:
    """Two disjoint copies of the tournament plus one apex: copies point
    first -> second, the second copy beats the apex, the apex beats the
    first copy.

    Contract: the input is (k-1)-colorable iff the output is k-colorable,
    for k >= 3.
    """
    if k < 3:
        raise ValueError("the lift is meaningful for k >= 3")
    n = t.n
    edges: list[tuple[int, int]] = []
    for (x, y) in t.edges:
        edges.append((x, y))
        edges.append((n + x, n + y))
    apex = 2 * n + 1
    for x in range(1, n + 1):
        for y in range(n + 1, 2 * n + 1):
            edges.append((x, y))
    for y in range(n + 1, 2 * n + 1):
        edges.append((y, apex))
    for x in range(1, n + 1):
        edges.append((apex, x))
    return Tournament(2 * n + 1, edges)
