"""Backedge graphs, order-preserving homomorphisms and ordered cores.

Labeled graphs here are undirected simple graphs whose vertices are
natural numbers; the order of the labels carries meaning. An
order-preserving homomorphism (OPH) is a map that is monotone on labels
and sends edges to edges. The ordered core of a graph is a smallest
induced subgraph (by vertex count, inheriting labels) receiving an OPH
from the whole graph.

Sweeping all h! labelings of an oriented pattern and taking the core of
each labeling's backedge graph yields a finite family; a maximal element
of that family under the OPH order is the object the lower-bound
construction is built around.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .digraphs import OrientedGraph
from .errors import AuditError, BudgetExceeded

__all__ = [
    "LabeledGraph",
    "OphMap",
    "CoreFamily",
    "backedge_graph",
    "find_oph",
    "enumerate_ophs",
    "ordered_core",
    "is_ordered_core",
    "core_family",
    "select_k",
    "odd_cycle_certificate",
    "order_isomorphic",
    "graph_two_colorable",
    "graph_chromatic_number",
    "verify_core_projection",
]


class LabeledGraph:
    """Undirected simple graph on a finite label set from the naturals."""

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]):
        vs = tuple(sorted(set(int(v) for v in vertices)))
        if vs and vs[0] < 1:
            raise ValueError("labels must be positive integers")
        vset = set(vs)
        norm = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop at {a}")
            if a not in vset or b not in vset:
                raise ValueError(f"edge ({a},{b}) uses an unknown label")
            norm.add((min(a, b), max(a, b)))
        adj: dict[int, frozenset[int]] = {}
        tmp: dict[int, set[int]] = {v: set() for v in vs}
        for a, b in norm:
            tmp[a].add(b)
            tmp[b].add(a)
        for v in vs:
            adj[v] = frozenset(tmp[v])
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "_adj", adj)

    def __setattr__(self, name, value):
        raise AttributeError("LabeledGraph is immutable")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def induced(self, labels: Iterable[int]) -> "LabeledGraph":
        keep = set(labels)
        if not keep <= set(self.vertices):
            raise ValueError("labels not contained in the vertex set")
        return LabeledGraph(
            keep, (e for e in self.edges if e[0] in keep and e[1] in keep)
        )

    def canonical_key(self) -> tuple[int, tuple[tuple[int, int], ...]]:
        """Edge list after the order-preserving relabeling onto 1..n."""
        pos = {v: i + 1 for i, v in enumerate(self.vertices)}
        return (
            self.n,
            tuple(sorted((pos[a], pos[b]) for a, b in self.edges)),
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LabeledGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"LabeledGraph({list(self.vertices)}, {sorted(self.edges)})"


@dataclass(frozen=True)
class OphMap:
    """A monotone, edge-preserving vertex map between labeled graphs."""

    mapping: tuple[tuple[int, int], ...]  # sorted (source, image) pairs

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "OphMap":
        return cls(tuple(sorted(d.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def apply(self, v: int) -> int:
        for s, t in self.mapping:
            if s == v:
                return t
        raise KeyError(v)

    def compose(self, inner: "OphMap") -> "OphMap":
        """self after inner."""
        me = self.as_dict()
        return OphMap.from_dict({s: me[t] for s, t in inner.mapping})

    def is_valid(self, source: LabeledGraph, target: LabeledGraph) -> bool:
        d = self.as_dict()
        if set(d) != set(source.vertices):
            return False
        if not set(d.values()) <= set(target.vertices):
            return False
        vs = source.vertices
        for i in range(len(vs) - 1):
            if d[vs[i]] > d[vs[i + 1]]:
                return False
        return all(target.has_edge(d[a], d[b]) for a, b in source.edges)

    def is_bijective(self) -> bool:
        images = [t for _, t in self.mapping]
        return len(set(images)) == len(images)


def backedge_graph(h: OrientedGraph, labeling: Sequence[int]) -> LabeledGraph:
    """Undirected graph of the edges pointing against the labeling.

    ``labeling[v-1]`` is the label given to vertex v; it must be a
    bijection onto 1..h. Label pair {i, j}, i < j, is an edge exactly when
    the edge between the correspondingly labeled vertices points from j's
    vertex to i's vertex.
    """
    if sorted(labeling) != list(range(1, h.n + 1)):
        raise ValueError("labeling must be a bijection onto 1..h")
    edges = []
    for u, v in h.edges:
        a, b = labeling[u - 1], labeling[v - 1]
        if a > b:
            edges.append((b, a))
    return LabeledGraph(range(1, h.n + 1), edges)


def _oph_search(
    g: LabeledGraph, target: LabeledGraph
) -> Iterator[dict[int, int]]:
    """Backtracking over vertices of g in increasing label order.

    Monotonicity gives each vertex a lower bound on its image: the image
    of its predecessor. Edges to already-placed neighbours are checked on
    assignment.
    """
    gvs = g.vertices
    tvs = target.vertices
    if not gvs:
        yield {}
        return
    if not tvs:
        return
    img: dict[int, int] = {}
    earlier_nbrs = [
        [u for u in g.neighbors(v) if u < v] for v in gvs
    ]

    def rec(i: int, lo: int) -> Iterator[dict[int, int]]:
        if i == len(gvs):
            yield dict(img)
            return
        v = gvs[i]
        for w in tvs:
            if w < lo:
                continue
            if all(target.has_edge(img[u], w) for u in earlier_nbrs[i]):
                img[v] = w
                yield from rec(i + 1, w)
                del img[v]

    yield from rec(0, tvs[0])


def find_oph(g: LabeledGraph, target: LabeledGraph) -> Optional[OphMap]:
    """First order-preserving homomorphism from g to target, or None."""
    for d in _oph_search(g, target):
        return OphMap.from_dict(d)
    return None


def enumerate_ophs(g: LabeledGraph, target: LabeledGraph) -> Iterator[OphMap]:
    """All order-preserving homomorphisms, in search order."""
    for d in _oph_search(g, target):
        yield OphMap.from_dict(d)


def order_isomorphic(g1: LabeledGraph, g2: LabeledGraph) -> bool:
    """Order-preserving isomorphism test.

    Between fixed label sets the monotone bijection is unique, so the test
    reduces to comparing edge sets after that relabeling.
    """
    return g1.canonical_key() == g2.canonical_key()


def ordered_core(g: LabeledGraph, budget: Optional[int] = None) -> LabeledGraph:
    """Minimum-vertex induced subgraph receiving an OPH from the graph.

    Candidates are enumerated by increasing vertex count, ties broken by
    the lexicographically smallest label tuple. ``budget`` caps the number
    of candidate subgraphs tested.
    """
    tested = 0
    vs = g.vertices
    for size in range(1, g.n + 1):
        for subset in itertools.combinations(vs, size):
            tested += 1
            if budget is not None and tested > budget:
                raise BudgetExceeded(
                    "ordered-core candidate budget exhausted", tested=tested
                )
            candidate = g.induced(subset)
            if find_oph(g, candidate) is not None:
                return candidate
    return g  # only reachable for the empty graph


def is_ordered_core(g: LabeledGraph) -> bool:
    """No OPH from g to a proper induced subgraph of itself."""
    vs = g.vertices
    for size in range(1, g.n):
        for subset in itertools.combinations(vs, size):
            if find_oph(g, g.induced(subset)) is not None:
                return False
    return True


@dataclass(frozen=True)
class CoreFamily:
    """Ordered cores of the backedge graphs over all labelings of a pattern.

    Members are deduplicated up to order-preserving isomorphism; the
    representative kept for each class is the one produced by the first
    labeling in lexicographic order, recorded in ``witnesses``.
    """

    members: tuple[LabeledGraph, ...]
    witnesses: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.members)


def core_family(h: OrientedGraph, budget: Optional[int] = None) -> CoreFamily:
    """Sweep all h! labelings, take each backedge graph's ordered core,
    deduplicate up to order-preserving isomorphism.

    ``budget`` caps the number of labelings processed (h! needed for an
    exhaustive family).
    """
    seen: dict = {}
    members: list[LabeledGraph] = []
    witnesses: list[tuple[int, ...]] = []
    core_cache: dict[frozenset, LabeledGraph] = {}
    processed = 0
    for labeling in itertools.permutations(range(1, h.n + 1)):
        processed += 1
        if budget is not None and processed > budget:
            raise BudgetExceeded(
                "labeling sweep budget exhausted", processed=processed
            )
        g = backedge_graph(h, labeling)
        core = core_cache.get(g.edges)
        if core is None:
            core = ordered_core(g)
            core_cache[g.edges] = core
        key = core.canonical_key()
        if key not in seen:
            seen[key] = len(members)
            members.append(core)
            witnesses.append(tuple(labeling))
    return CoreFamily(tuple(members), tuple(witnesses))


def _maximal_indices(family: CoreFamily) -> list[int]:
    """Members receiving no OPH from any non-isomorphic member."""
    out = []
    for i, k in enumerate(family.members):
        if all(
            j == i or find_oph(c, k) is None
            for j, c in enumerate(family.members)
        ):
            out.append(i)
    return out


def select_k(
    h_or_family: OrientedGraph | CoreFamily,
) -> LabeledGraph:
    """A maximal member of the core family under the OPH partial order.

    Among maximal classes the member with the lexicographically least
    canonical edge list (then fewest vertices) is returned, so repeated
    runs pick the same representative. Maximality is re-verified directly;
    a violation raises AuditError.
    """
    family = (
        h_or_family
        if isinstance(h_or_family, CoreFamily)
        else core_family(h_or_family)
    )
    if not family.members:
        raise ValueError("empty core family")
    maximal = _maximal_indices(family)
    if not maximal:
        raise AuditError("poset has no maximal element; antisymmetry violated")
    best = min(
        maximal,
        key=lambda i: (
            family.members[i].canonical_key()[1],
            family.members[i].n,
        ),
    )
    k = family.members[best]
    for j, c in enumerate(family.members):
        if j != best and find_oph(c, k) is not None:
            raise AuditError("selected member is not maximal")
    return k


def graph_two_colorable(g: LabeledGraph) -> bool:
    """Bipartiteness of the underlying undirected graph."""
    return _bipartition_or_odd_cycle(g)[0] is not None


def odd_cycle_certificate(g: LabeledGraph) -> list[int]:
    """An odd cycle (as a vertex sequence) in a non-bipartite graph.

    Raises ValueError when the graph is 2-colorable.
    """
    coloring, cycle = _bipartition_or_odd_cycle(g)
    if coloring is not None:
        raise ValueError("graph is 2-colorable; no odd cycle exists")
    assert cycle is not None
    if len(cycle) % 2 == 0 or len(cycle) < 3:
        raise AssertionError("certificate construction failed")
    for i, v in enumerate(cycle):
        if not g.has_edge(v, cycle[(i + 1) % len(cycle)]):
            raise AssertionError("certificate is not a cycle")
    return cycle


def _bipartition_or_odd_cycle(
    g: LabeledGraph,
) -> tuple[Optional[dict[int, int]], Optional[list[int]]]:
    color: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    for root in g.vertices:
        if root in color:
            continue
        color[root] = 0
        parent[root] = None
        queue = [root]
        while queue:
            u = queue.pop(0)
            for w in sorted(g.neighbors(u)):
                if w not in color:
                    color[w] = color[u] ^ 1
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return None, _splice_cycle(u, w, parent)
    return color, None


def _splice_cycle(
    u: int, w: int, parent: dict[int, Optional[int]]
) -> list[int]:
    path_u: list[int] = []
    x: Optional[int] = u
    while x is not None:
        path_u.append(x)
        x = parent[x]
    anc = set(path_u)
    path_w: list[int] = []
    x = w
    while x not in anc:
        path_w.append(x)
        x = parent[x]
    lca = x
    cycle = path_u[: path_u.index(lca) + 1] + list(reversed(path_w))
    return cycle


def graph_chromatic_number(g: LabeledGraph) -> int:
    """Exact chromatic number of a small undirected graph."""
    if g.n == 0:
        return 0
    if not g.edges:
        return 1
    if graph_two_colorable(g):
        return 2
    for k in range(3, g.n + 1):
        if _graph_k_colorable(g, k):
            return k
    return g.n


def _graph_k_colorable(g: LabeledGraph, k: int) -> bool:
    vs = g.vertices
    assign: dict[int, int] = {}

    def rec(i: int, used: int) -> bool:
        if i == len(vs):
            return True
        v = vs[i]
        for c in range(min(used + 1, k)):
            if all(assign.get(u) != c for u in g.neighbors(v)):
                assign[v] = c
                if rec(i + 1, max(used, c + 1)):
                    return True
                del assign[v]
        return False

    return rec(0, 0)


def verify_core_projection(
    g: LabeledGraph, k: LabeledGraph, f: OphMap
) -> bool:
    """Check that some restriction of f is a graph isomorphism onto k.

    The restriction to the vertex set of g's own ordered core must be a
    bijection onto k mapping the induced edges onto k's edges exactly.
    """
    core = ordered_core(g)
    d = f.as_dict()
    images = [d[v] for v in core.vertices]
    if sorted(images) != sorted(k.vertices):
        return False
    mapped_edges = {(min(d[a], d[b]), max(d[a], d[b])) for a, b in core.edges}
    return mapped_edges == set(k.edges)
