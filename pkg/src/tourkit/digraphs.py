"""Oriented-graph and tournament kernel.

Vertices are the integers 1..n and the natural order of the labels is
semantically meaningful (the ordered-homomorphism machinery depends on it).
Adjacency is a dense bit matrix: ``out[u]`` is an integer whose bit ``v``
is set iff u -> v, so direction queries, neighbourhood intersections and
the embedding search are all O(1) word operations.

All values are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .errors import BudgetExceeded

__all__ = [
    "OrientedGraph",
    "Tournament",
    "PairStats",
    "Embedding",
    "DistanceResult",
    "density",
    "count_embeddings",
    "enumerate_embeddings",
    "embedding_stats",
    "has_embedding",
    "find_embedding",
    "count_automorphisms",
    "distance_to_h_free",
    "transitive_subtournament",
    "cyclic_triangle",
    "transitive_tournament",
    "c3_pattern",
    "single_edge_pattern",
    "tournament_from_bits",
    "enumerate_tournaments",
    "random_tournament",
]


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class OrientedGraph:
    """A digraph with at most one directed edge per vertex pair, no loops.

    ``edges`` is a frozenset of ordered pairs (u, v) meaning u -> v.
    """

    __slots__ = ("n", "edges", "out", "inn")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        edge_set = frozenset((int(u), int(v)) for u, v in edges)
        out = [0] * (n + 1)
        inn = [0] * (n + 1)
        for u, v in edge_set:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u},{v}) uses a vertex outside 1..{n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if (v, u) in edge_set:
                raise ValueError(f"both directions present between {u} and {v}")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edge_set)
        object.__setattr__(self, "out", tuple(out))
        object.__setattr__(self, "inn", tuple(inn))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.out[u] >> v) & 1)

    def out_degree(self, v: int) -> int:
        return _popcount(self.out[v])

    def in_degree(self, v: int) -> int:
        return _popcount(self.inn[v])

    def edge_count(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OrientedGraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, edges={sorted(self.edges)})"

    # -- derived objects -----------------------------------------------

    def relabel(self, perm: Sequence[int]) -> "OrientedGraph":
        """Apply a permutation: vertex v becomes perm[v-1] (a bijection on 1..n)."""
        if sorted(perm) != list(self.vertices):
            raise ValueError("perm must be a bijection on 1..n")
        return type(self)(
            self.n, ((perm[u - 1], perm[v - 1]) for u, v in self.edges)
        )

    def induced(self, vertices: Sequence[int]) -> "OrientedGraph":
        """Induced subdigraph, relabelled to 1..k in the given label order."""
        vs = sorted(set(vertices))
        pos = {v: i + 1 for i, v in enumerate(vs)}
        return OrientedGraph(
            len(vs),
            ((pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos),
        )

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def topological_order(self) -> Optional[list[int]]:
        """Topological order with smallest-label-first tie-breaking, or None."""
        indeg = [self.in_degree(v) for v in range(self.n + 1)]
        ready = [v for v in self.vertices if indeg[v] == 0]
        order: list[int] = []
        while ready:
            v = min(ready)
            ready.remove(v)
            order.append(v)
            for w in _bits(self.out[v]):
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        return order if len(order) == self.n else None


class Tournament(OrientedGraph):
    """A complete orientation: exactly one directed edge per vertex pair."""

    __slots__ = ()

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        super().__init__(n, edges)
        if len(self.edges) != n * (n - 1) // 2:
            raise ValueError(
                f"not a tournament: {len(self.edges)} edges on {n} vertices"
            )

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> "Tournament":
        n = len(rows)
        edges = []
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("adjacency matrix must be square")
            for j in range(n):
                if rows[i][j]:
                    edges.append((i + 1, j + 1))
        return cls(n, edges)

    @classmethod
    def from_oriented(cls, g: OrientedGraph) -> "Tournament":
        return cls(g.n, g.edges)

    def adjacency_matrix(self) -> list[list[int]]:
        """0/1 matrix with zero diagonal; entry (i,j)=1 iff i -> j."""
        return [
            [1 if self.has_edge(i, j) else 0 for j in self.vertices]
            for i in self.vertices
        ]

    def subtournament(self, vertices: Sequence[int]) -> "Tournament":
        return Tournament.from_oriented(self.induced(vertices))

    def flip_pairs(self, pairs: Iterable[tuple[int, int]]) -> "Tournament":
        """Reverse the orientation on the given unordered pairs."""
        edges = set(self.edges)
        for a, b in pairs:
            if (a, b) in edges:
                edges.remove((a, b))
                edges.add((b, a))
            elif (b, a) in edges:
                edges.remove((b, a))
                edges.add((a, b))
            else:
                raise ValueError(f"({a},{b}) is not a vertex pair of the tournament")
        return Tournament(self.n, edges)

    def is_transitive(self) -> bool:
        return self.is_acyclic()


# -- small fixed graphs ------------------------------------------------


def cyclic_triangle() -> Tournament:
    return Tournament(3, [(1, 2), (2, 3), (3, 1)])


def transitive_tournament(n: int) -> Tournament:
    return Tournament(n, ((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def c3_pattern() -> OrientedGraph:
    """The directed triangle as a pattern."""
    return OrientedGraph(3, [(1, 2), (2, 3), (3, 1)])


def single_edge_pattern() -> OrientedGraph:
    return OrientedGraph(2, [(1, 2)])


def tournament_from_bits(n: int, bits: int) -> Tournament:
    """Decode a tournament from C(n,2) bits, pairs in lexicographic order.

    Bit k of ``bits`` corresponds to the k-th pair (i,j), i<j; a set bit
    means i -> j.
    """
    edges = []
    idx = 0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            edges.append((i, j) if (bits >> idx) & 1 else (j, i))
            idx += 1
    return Tournament(n, edges)


def enumerate_tournaments(n: int) -> Iterator[Tournament]:
    """All 2^C(n,2) labeled tournaments on 1..n, in bit order."""
    for bits in range(1 << (n * (n - 1) // 2)):
        yield tournament_from_bits(n, bits)


def random_tournament(n: int, rng: random.Random) -> Tournament:
    return tournament_from_bits(n, rng.getrandbits(n * (n - 1) // 2) if n > 1 else 0)


# -- densities ---------------------------------------------------------


@dataclass(frozen=True)
class PairStats:
    """Directed density statistics of an ordered pair of disjoint vertex sets."""

    e_xy: int
    e_yx: int
    density: Fraction
    dominant_xy: bool
    weight: Fraction

    def is_homogeneous(self, delta: Fraction) -> bool:
        return self.density >= 1 - delta or self.density <= delta


def density(t: Tournament, xs: Iterable[int], ys: Iterable[int]) -> PairStats:
    """Exact directed density d(X,Y) = e(X,Y)/(|X||Y|) of disjoint sets.

    The dominant direction is X -> Y iff d(X,Y) >= 1/2.
    """
    x_set = set(xs)
    y_set = set(ys)
    if not x_set or not y_set:
        raise ValueError("X and Y must be nonempty")
    if x_set & y_set:
        raise ValueError("X and Y must be disjoint")
    for v in x_set | y_set:
        if not (1 <= v <= t.n):
            raise ValueError(f"vertex {v} outside 1..{t.n}")
    y_mask = 0
    for v in y_set:
        y_mask |= 1 << v
    e_xy = sum(_popcount(t.out[u] & y_mask) for u in x_set)
    size = len(x_set) * len(y_set)
    d = Fraction(e_xy, size)
    return PairStats(
        e_xy=e_xy,
        e_yx=size - e_xy,
        density=d,
        dominant_xy=d >= Fraction(1, 2),
        weight=Fraction(size, t.n * t.n),
    )


# -- embeddings --------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """An edge-preserving injection of a pattern into a host.

    ``mapping[k]`` is the host vertex assigned to pattern vertex k+1.
    """

    mapping: tuple[int, ...]

    def image(self) -> frozenset[int]:
        return frozenset(self.mapping)

    def apply(self, pattern_vertex: int) -> int:
        return self.mapping[pattern_vertex - 1]

    def is_valid(self, host: OrientedGraph, pattern: OrientedGraph) -> bool:
        if len(self.mapping) != pattern.n:
            return False
        if len(set(self.mapping)) != pattern.n:
            return False
        return all(
            host.has_edge(self.mapping[u - 1], self.mapping[v - 1])
            for u, v in pattern.edges
        )


def _pattern_order(pattern: OrientedGraph) -> list[int]:
    # Most-constrained-first: place high-degree pattern vertices early,
    # then prefer vertices adjacent to already-placed ones.
    degree = {
        v: pattern.out_degree(v) + pattern.in_degree(v) for v in pattern.vertices
    }
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < pattern.n:
        def key(v):
            links = sum(
                1
                for u in placed
                if pattern.has_edge(u, v) or pattern.has_edge(v, u)
            )
            return (-links, -degree[v], v)
        v = min((v for v in pattern.vertices if v not in placed), key=key)
        order.append(v)
        placed.add(v)
    return order


def _embed(
    host_out: Sequence[int],
    host_in: Sequence[int],
    n_host: int,
    pattern: OrientedGraph,
    count_all: bool,
    forbidden_pairs: Optional[set[tuple[int, int]]] = None,
) -> tuple[int, Optional[tuple[int, ...]]]:
    """Backtracking embedding search over bit masks.

    Returns (count, witness). With count_all=False stops at the first
    embedding. ``forbidden_pairs`` excludes embeddings whose image uses
    any of the given directed host pairs.
    """
    if pattern.n > n_host:
        return 0, None
    order = _pattern_order(pattern)
    full = ((1 << (n_host + 1)) - 1) & ~1
    image = [0] * pattern.n  # image[i] = host vertex of order[i]
    # constraints[i]: list of (j, forward) for placed j < i with a pattern edge
    constraints: list[list[tuple[int, bool]]] = []
    for i, v in enumerate(order):
        cons = []
        for j in range(i):
            u = order[j]
            if pattern.has_edge(u, v):
                cons.append((j, True))   # image[j] -> candidate
            elif pattern.has_edge(v, u):
                cons.append((j, False))  # candidate -> image[j]
        constraints.append(cons)

    count = 0
    witness: Optional[tuple[int, ...]] = None

    def rec(i: int, used: int) -> bool:
        nonlocal count, witness
        if i == len(order):
            count += 1
            if witness is None:
                w = [0] * pattern.n
                for k, v in enumerate(order):
                    w[v - 1] = image[k]
                witness = tuple(w)
            return not count_all
        cand = full & ~used
        for j, forward in constraints[i]:
            cand &= host_out[image[j]] if forward else host_in[image[j]]
            if not cand:
                return False
        for w_vertex in _bits(cand):
            if forbidden_pairs is not None:
                bad = False
                for j, forward in constraints[i]:
                    pair = (
                        (image[j], w_vertex) if forward else (w_vertex, image[j])
                    )
                    if pair in forbidden_pairs:
                        bad = True
                        break
                if bad:
                    continue
            image[i] = w_vertex
            if rec(i + 1, used | (1 << w_vertex)):
                return True
        return False

    rec(0, 0)
    return count, witness


def count_embeddings(host: OrientedGraph, pattern: OrientedGraph) -> int:
    """Exact number of injections phi with u->v implying phi(u)->phi(v).

    The empty pattern embeds exactly once.
    """
    count, _ = _embed(host.out, host.inn, host.n, pattern, count_all=True)
    return count


def enumerate_embeddings(
    host: OrientedGraph, pattern: OrientedGraph, limit: Optional[int] = None
) -> Iterator[Embedding]:
    """Yield every embedding of the pattern, in search order.

    ``limit`` caps the number of embeddings yielded; hitting the cap
    raises BudgetExceeded since a truncated enumeration is not exhaustive.
    """
    if pattern.n > host.n:
        return
    order = _pattern_order(pattern)
    full = ((1 << (host.n + 1)) - 1) & ~1
    image = [0] * pattern.n
    constraints: list[list[tuple[int, bool]]] = []
    for i, v in enumerate(order):
        cons = []
        for j in range(i):
            u = order[j]
            if pattern.has_edge(u, v):
                cons.append((j, True))
            elif pattern.has_edge(v, u):
                cons.append((j, False))
        constraints.append(cons)
    yielded = 0

    def rec(i: int, used: int) -> Iterator[Embedding]:
        nonlocal yielded
        if i == len(order):
            mapping = [0] * pattern.n
            for k, v in enumerate(order):
                mapping[v - 1] = image[k]
            yielded += 1
            if limit is not None and yielded > limit:
                raise BudgetExceeded(
                    "embedding enumeration budget exhausted", yielded=yielded
                )
            yield Embedding(tuple(mapping))
            return
        cand = full & ~used
        for j, forward in constraints[i]:
            cand &= host.out[image[j]] if forward else host.inn[image[j]]
            if not cand:
                return
        for w in _bits(cand):
            image[i] = w
            yield from rec(i + 1, used | (1 << w))

    yield from rec(0, 0)


def has_embedding(host: OrientedGraph, pattern: OrientedGraph) -> bool:
    count, _ = _embed(host.out, host.inn, host.n, pattern, count_all=False)
    return count > 0


def find_embedding(
    host: OrientedGraph, pattern: OrientedGraph
) -> Optional[Embedding]:
    count, witness = _embed(host.out, host.inn, host.n, pattern, count_all=False)
    return Embedding(witness) if count else None


def count_automorphisms(pattern: OrientedGraph) -> int:
    """Permutations of the pattern preserving the edge set exactly."""
    count = 0
    for perm in itertools.permutations(pattern.vertices):
        if all(
            pattern.has_edge(perm[u - 1], perm[v - 1]) for u, v in pattern.edges
        ):
            count += 1
    return count


@dataclass(frozen=True)
class EmbeddingStats:
    """Labeled embedding count plus the unlabeled-copy count.

    The unlabeled count is defined as embeddings / |Aut(pattern)| and is
    reported as an exact fraction.
    """

    embeddings: int
    automorphisms: int

    @property
    def unlabeled(self) -> Fraction:
        return Fraction(self.embeddings, self.automorphisms)


def embedding_stats(host: OrientedGraph, pattern: OrientedGraph) -> EmbeddingStats:
    return EmbeddingStats(
        embeddings=count_embeddings(host, pattern),
        automorphisms=count_automorphisms(pattern),
    )


# -- edit distance to H-freeness ---------------------------------------


@dataclass(frozen=True)
class DistanceResult:
    """Outcome of the reversal-distance search.

    ``distance`` is the exact minimum when ``exact`` is True; otherwise the
    search proved ``lower_bound`` but exceeded its budget before settling
    the exact value.
    """

    distance: Optional[int]
    lower_bound: int
    exact: bool
    flips: Optional[tuple[tuple[int, int], ...]] = None
    upper_bound: Optional[int] = None


def _greedy_disjoint_copies(
    out: list[int], inn: list[int], n: int, pattern: OrientedGraph
) -> int:
    """Number of pairwise pair-disjoint copies found greedily (a lower bound
    on the reversal distance, since each copy needs its own reversal)."""
    used: set[tuple[int, int]] = set()
    found = 0
    while True:
        count, witness = _embed(out, inn, n, pattern, count_all=False,
                                forbidden_pairs=used)
        if not count:
            return found
        found += 1
        for u, v in pattern.edges:
            a, b = witness[u - 1], witness[v - 1]
            used.add((a, b))
            used.add((b, a))


def distance_to_h_free(
    t: Tournament,
    pattern: OrientedGraph,
    budget: Optional[int] = None,
    node_budget: int = 2_000_000,
) -> DistanceResult:
    """Minimum number of edge reversals making the tournament pattern-free.

    Branch-and-bound over surviving embeddings: any pattern-free tournament
    must differ from the current one on at least one directed pair of each
    surviving copy, so the search branches on the copy's pairs. A greedy
    pair-disjoint-copy packing gives the lower bound.

    ``budget`` caps the admissible distance; if the true distance exceeds
    it the result is inexact with ``lower_bound = budget + 1``. A result
    whose lower bound exceeds C(n,2) means no reversal set of any size
    works (the pattern embeds into every tournament on n vertices).
    ``node_budget`` caps the number of search nodes; on exhaustion the
    result is inexact and carries the best proven lower bound.
    """
    if pattern.n == 0:
        raise ValueError("pattern must have at least one vertex")
    n = t.n
    best: Optional[int] = None
    best_flips: Optional[tuple[tuple[int, int], ...]] = None
    all_pairs = n * (n - 1) // 2
    cap = min(budget, all_pairs) if budget is not None else all_pairs
    root_lb = 0
    nodes = 0
    exhausted = False

    out = list(t.out)
    inn = list(t.inn)

    def flip(a: int, b: int) -> None:
        # reverse a->b into b->a
        out[a] &= ~(1 << b)
        inn[b] &= ~(1 << a)
        out[b] |= 1 << a
        inn[a] |= 1 << b

    def search(flipped: list[tuple[int, int]], pinned: set) -> None:
        nonlocal best, best_flips, root_lb, nodes, exhausted
        nodes += 1
        if nodes > node_budget:
            exhausted = True
            return
        depth = len(flipped)
        limit = cap if best is None else min(cap, best - 1)
        if depth > limit:
            return
        lb = depth + _greedy_disjoint_copies(out, inn, n, pattern)
        if not flipped:
            root_lb = max(root_lb, lb)
        if lb > limit:
            return
        _, witness = _embed(out, inn, n, pattern, count_all=False)
        if witness is None:
            if best is None or depth < best:
                best = depth
                best_flips = tuple(flipped)
            return
        copy_pairs = []
        seen = set()
        for u, v in pattern.edges:
            a, b = witness[u - 1], witness[v - 1]
            key = (min(a, b), max(a, b))
            if key not in seen:
                seen.add(key)
                copy_pairs.append((a, b))
        on_path = set(flipped)
        pin = set(pinned)
        for a, b in copy_pairs:
            key = (min(a, b), max(a, b))
            if key in pin or key in on_path:
                continue
            flip(a, b)
            flipped.append(key)
            search(flipped, pin)
            flipped.pop()
            flip(b, a)
            if exhausted:
                return
            pin.add(key)

    search([], set())
    if best is not None and not exhausted:
        return DistanceResult(best, best, True, best_flips)
    if exhausted:
        return DistanceResult(None, root_lb, False, best_flips, best)
    # search complete without a solution: every reversal set within the cap
    # leaves a copy, so the distance is at least cap + 1
    return DistanceResult(None, max(root_lb, cap + 1), False)


# -- transitive extraction ---------------------------------------------


def transitive_subtournament(t: Tournament, k: int) -> Optional[list[int]]:
    """A vertex sequence inducing a transitive subtournament of size k.

    Constructive recursion: take a vertex of maximum out-degree (at least
    (n-1)/2), recurse into its out-neighbourhood. Succeeds whenever
    n >= 2^(k-1); failure is possible only below that threshold.
    """
    if k < 1:
        raise ValueError("target size must be at least 1")
    pool = 0
    for v in t.vertices:
        pool |= 1 << v
    seq: list[int] = []
    while len(seq) < k:
        if not pool:
            return None
        v = max(_bits(pool), key=lambda u: (_popcount(t.out[u] & pool), -u))
        seq.append(v)
        pool &= t.out[v]
    return seq
