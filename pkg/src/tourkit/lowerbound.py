"""Hard-instance generator: AP-free sets, clique-decomposable base graphs,
and the block blow-up tournament with its two audits.

The pipeline for a non-2-colorable pattern H:

1. compute the maximal ordered core K of H's backedge graphs and an odd
   cycle inside it;
2. read off the part coloring of H and the digraph D of forced part
   pairs (the non-edges of K);
3. build a base graph R whose edge set decomposes into transversal
   k-cliques indexed by (start, difference) pairs over an AP-free
   difference set, so distinct cliques never share an edge;
4. blow every base vertex up to a block, make the part unions
   transitive, orient non-edge block pairs forward, and plant one copy
   of the forcing construction on every clique.

Two audits make the construction checkable at desk scale: the copy
localization audit verifies that every embedding of H threads a
patterned cycle of R (exact combinatorics, not asymptotics), and the
farness certificate extracts a family of copies pairwise disjoint on
cut-edges, so reversing j cut-edges can destroy at most j of them.

Per-clique certification is independent across cliques (and could run
concurrently); assembly of the final tournament is single-writer and
deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .coloring import acyclic_k_coloring
from .digraphs import (
    Embedding,
    OrientedGraph,
    Tournament,
    _bits,
    enumerate_embeddings,
)
from .errors import AuditError, BudgetExceeded
from .forcing import (
    KPartiteTournament,
    build_forcing,
    certify_completion,
)
from .orderedhom import (
    LabeledGraph,
    backedge_graph,
    core_family,
    find_oph,
    odd_cycle_certificate,
    select_k,
)

__all__ = [
    "BehrendSet",
    "RSGraph",
    "BlowupTournament",
    "LocalizationReport",
    "FarnessCertificate",
    "behrend",
    "is_ap_free",
    "rs_graph",
    "derive_part_structure",
    "blowup_tournament",
    "audit_copy_localization",
    "farness_certificate",
]


# -- AP-free sets --------------------------------------------------------


@dataclass(frozen=True)
class BehrendSet:
    """A 3-AP-free subset of 1..n_max with its construction parameters."""

    n_max: int
    members: tuple[int, ...]
    digits: int
    dimension: int
    radius: Optional[int]  # None: all shells of the digit cube pooled

    def __len__(self) -> int:
        return len(self.members)


def is_ap_free(members: Sequence[int]) -> bool:
    """Quadratic scan for a three-term arithmetic progression."""
    values = sorted(set(members))
    present = set(values)
    for i, a in enumerate(values):
        for c in values[i + 1 :]:
            if (a + c) % 2 == 0 and (a + c) // 2 in present and (a + c) // 2 != a:
                return False
    return True


def _digit_vectors(d: int, dim: int) -> Iterator[tuple[int, ...]]:
    yield from itertools.product(range(d), repeat=dim)


def behrend(n_max: int, vector_budget: int = 300_000) -> BehrendSet:
    """Largest 3-AP-free set found over digit-sphere candidates.

    Candidates use digit vectors in {0..d-1}^dim read in base 2d (so
    digit sums never carry), one candidate per squared-norm shell, plus
    the whole digit cube as a degenerate all-shells candidate; only the
    d = 2 cube survives verification in general, and it is what keeps the
    output competitive at small ranges where single shells are tiny.
    Every candidate is verified AP-free before being considered.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    best: Optional[BehrendSet] = None

    def consider(members: list[int], d: int, dim: int, radius: Optional[int]):
        nonlocal best
        members = sorted(v for v in set(members) if 1 <= v <= n_max)
        if not members or not is_ap_free(members):
            return
        candidate = BehrendSet(n_max, tuple(members), d, dim, radius)
        key = (len(members), -d, -dim, -(radius if radius is not None else -1))
        if best is None:
            best = candidate
            return
        best_key = (
            len(best.members),
            -best.digits,
            -best.dimension,
            -(best.radius if best.radius is not None else -1),
        )
        if key > best_key:
            best = candidate

    consider([1], 1, 1, 0)
    d = 2
    while 2 * d <= 2 * (n_max + 1):
        base = 2 * d
        dim = 1
        while base ** (dim - 1) <= n_max and d**dim <= vector_budget:
            shells: dict[int, list[int]] = {}
            weights = [base**i for i in range(dim)]
            for vec in _digit_vectors(d, dim):
                value = 1 + sum(x * w for x, w in zip(vec, weights))
                if value <= n_max:
                    shells.setdefault(sum(x * x for x in vec), []).append(value)
            for radius, members in shells.items():
                consider(members, d, dim, radius)
            consider([v for ms in shells.values() for v in ms], d, dim, None)
            dim += 1
        d += 1
    assert best is not None
    if not is_ap_free(best.members):
        raise AuditError("construction produced a progression")
    return best


# -- the base graph ------------------------------------------------------


@dataclass(frozen=True)
class RSGraph:
    """Base graph: k independent parts, edge set equal to the union of
    pairwise edge-disjoint transversal k-cliques.

    Vertices are 1..k*n_max; part i occupies the interval
    (i-1)*n_max+1 .. i*n_max. Clique (a, d) uses position a + (i-1)d in
    part i, so an edge determines its clique uniquely and the family is
    edge-disjoint by construction; the audit re-checks it anyway.
    """

    k: int
    n_max: int
    cliques: tuple[tuple[int, ...], ...]
    edges: frozenset[tuple[int, int]]
    delta: Fraction
    cycle_pattern: tuple[int, ...]
    difference_set: BehrendSet
    patterned_cycles: int

    @property
    def r(self) -> int:
        return self.k * self.n_max

    def part_of(self, v: int) -> int:
        return (v - 1) // self.n_max + 1

    def position_of(self, v: int) -> int:
        return (v - 1) % self.n_max + 1

    def vertex(self, part: int, position: int) -> int:
        return (part - 1) * self.n_max + position

    def part_vertices(self, part: int) -> range:
        base = (part - 1) * self.n_max
        return range(base + 1, base + self.n_max + 1)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges


def _count_patterned_cycles(
    edges: frozenset[tuple[int, int]],
    part_of,
    part_vertices,
    pattern: Sequence[int],
) -> int:
    """Exhaustive count of cycles v_1 ... v_l v_1 with v_j in part
    pattern[j] and every consecutive pair an edge."""
    adjacency: dict[int, dict[int, list[int]]] = {}
    for (u, v) in edges:
        adjacency.setdefault(u, {}).setdefault(part_of(v), []).append(v)
        adjacency.setdefault(v, {}).setdefault(part_of(u), []).append(u)
    count = 0
    length = len(pattern)

    def walk(j: int, first: int, current: int) -> int:
        if j == length:
            return 1 if (min(current, first), max(current, first)) in edges else 0
        total = 0
        for nxt in adjacency.get(current, {}).get(pattern[j], ()):
            total += walk(j + 1, first, nxt)
        return total

    for start in part_vertices(pattern[0]):
        count += walk(1, start, start)
    return count


def rs_graph(
    k: int,
    cycle_idx: Sequence[int],
    n_max: int,
    audit_cycles: bool = True,
) -> RSGraph:
    """Build the clique-decomposable base graph and audit it.

    Parts are equal intervals of length n_max. For every start a and
    every difference d from the AP-free set with a + (k-1)d <= n_max, the
    transversal clique places a + (i-1)d in part i. Independence,
    transversality, edge-disjointness and the union property are checked
    exactly; the patterned-cycle count (against the r^2 bound) is an
    empirical audit and any violation raises loudly.
    """
    cycle_idx = tuple(int(i) for i in cycle_idx)
    if not (3 <= len(cycle_idx) <= k):
        raise ValueError("cycle pattern length must lie in 3..k")
    if len(set(cycle_idx)) != len(cycle_idx):
        raise ValueError("cycle pattern indices must be distinct")
    if any(not 1 <= i <= k for i in cycle_idx):
        raise ValueError("cycle pattern indices must lie in 1..k")
    if k < 3:
        raise ValueError("need at least 3 parts")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")

    diff = behrend(n_max)
    r = k * n_max

    def vertex(part: int, position: int) -> int:
        return (part - 1) * n_max + position

    cliques: list[tuple[int, ...]] = []
    for a in range(1, n_max + 1):
        for d in diff.members:
            if a + (k - 1) * d > n_max:
                continue
            cliques.append(tuple(vertex(i, a + (i - 1) * d) for i in range(1, k + 1)))

    edges: set[tuple[int, int]] = set()
    for clique in cliques:
        if len({(v - 1) // n_max for v in clique}) != k:
            raise AuditError("clique is not transversal")
        for u, v in itertools.combinations(clique, 2):
            key = (min(u, v), max(u, v))
            if key in edges:
                raise AuditError(f"cliques share edge {key}")
            if (u - 1) // n_max == (v - 1) // n_max:
                raise AuditError("edge inside a part; parts must be independent")
            edges.add(key)

    graph = RSGraph(
        k=k,
        n_max=n_max,
        cliques=tuple(cliques),
        edges=frozenset(edges),
        delta=Fraction(len(cliques), r * r),
        cycle_pattern=cycle_idx,
        difference_set=diff,
        patterned_cycles=-1,
    )
    cycles = -1
    if audit_cycles:
        cycles = _count_patterned_cycles(
            graph.edges, graph.part_of, graph.part_vertices, cycle_idx
        )
        if cycles > r * r:
            raise AuditError(
                f"{cycles} patterned cycles exceed the r^2 = {r * r} bound"
            )
    return RSGraph(
        k=k,
        n_max=n_max,
        cliques=graph.cliques,
        edges=graph.edges,
        delta=graph.delta,
        cycle_pattern=cycle_idx,
        difference_set=diff,
        patterned_cycles=cycles,
    )


# -- the blow-up ---------------------------------------------------------


@dataclass(frozen=True)
class BlowupTournament:
    """The assembled hard instance with full provenance.

    ``tournament`` lives on r*m vertices: the block of base vertex x is
    the interval (x-1)*m+1 .. x*m. ``classes`` is the part coloring of
    the pattern, ``forcing`` the planted k-partite tournament, ``kernel``
    the maximal ordered core with its witness labeling and odd cycle.
    """

    base: RSGraph
    pattern: OrientedGraph
    tournament: Tournament
    m: int
    kernel: LabeledGraph
    witness_labeling: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    part_digraph: OrientedGraph
    kernel_cycle: tuple[int, ...]
    forcing: KPartiteTournament
    requested_n: int

    @property
    def n(self) -> int:
        return self.tournament.n

    def block(self, base_vertex: int) -> range:
        return range((base_vertex - 1) * self.m + 1, base_vertex * self.m + 1)

    def block_of(self, v: int) -> int:
        return (v - 1) // self.m + 1

    def part_of(self, v: int) -> int:
        return self.base.part_of(self.block_of(v))

    def is_cut_pair(self, u: int, v: int) -> bool:
        return self.part_of(u) != self.part_of(v)

    def clique_zone(self, clique_index: int) -> list[int]:
        zone: list[int] = []
        for x in self.base.cliques[clique_index]:
            zone.extend(self.block(x))
        return zone

    def provenance_lines(self) -> list[str]:
        """Key/value side-file content: block map, cliques, planted copy."""
        lines = [
            f"base-order: {self.base.r}",
            f"block-size: {self.m}",
            f"parts: {self.base.k}",
            f"part-length: {self.base.n_max}",
            f"requested-n: {self.requested_n}",
            f"kernel-vertices: {' '.join(str(v) for v in self.kernel.vertices)}",
            "kernel-edges: "
            + " ".join(f"{a}-{b}" for a, b in sorted(self.kernel.edges)),
            f"kernel-cycle: {' '.join(str(v) for v in self.kernel_cycle)}",
            f"witness-labeling: {' '.join(str(x) for x in self.witness_labeling)}",
            f"forcing-seed: {self.forcing.seed}",
        ]
        for i, cls in enumerate(self.classes, start=1):
            lines.append(f"class {i}: {' '.join(str(v) for v in cls)}")
        for x in range(1, self.base.r + 1):
            blk = self.block(x)
            lines.append(f"block {x}: {blk.start}..{blk.stop - 1}")
        for idx, clique in enumerate(self.base.cliques, start=1):
            lines.append(f"clique {idx}: {' '.join(str(x) for x in clique)}")
        return lines


def derive_part_structure(
    h: OrientedGraph,
) -> tuple[LabeledGraph, tuple[int, ...], tuple[tuple[int, ...], ...], OrientedGraph, tuple[int, ...], tuple[int, ...]]:
    """Kernel, witness labeling, classes, part digraph, kernel cycle and
    the part indices of the cycle, for a non-2-colorable pattern."""
    if acyclic_k_coloring(h, 2) is not None:
        raise ValueError(
            "pattern is 2-colorable; the construction needs a hard pattern"
        )
    family = core_family(h)
    kernel = select_k(family)
    witness = family.witnesses[family.members.index(kernel)]
    backedges = backedge_graph(h, witness)
    projection = find_oph(backedges, kernel)
    if projection is None:
        raise AuditError("no projection from the witness backedge graph")
    proj = projection.as_dict()
    kv = kernel.vertices
    k = len(kv)
    classes = tuple(
        tuple(v for v in h.vertices if proj[witness[v - 1]] == kv[i])
        for i in range(k)
    )
    d_edges = [
        (i + 1, j + 1)
        for i in range(k)
        for j in range(i + 1, k)
        if not kernel.has_edge(kv[i], kv[j])
    ]
    part_digraph = OrientedGraph(k, d_edges)
    cycle = tuple(odd_cycle_certificate(kernel))
    position = {a: i + 1 for i, a in enumerate(kv)}
    part_cycle = tuple(position[c] for c in cycle)
    return kernel, witness, classes, part_digraph, cycle, part_cycle


def blowup_tournament(
    h: OrientedGraph,
    n: int,
    seed: int,
    n_max: Optional[int] = None,
) -> BlowupTournament:
    """Assemble the blow-up instance for a non-2-colorable pattern.

    n is rounded down to the nearest multiple of the base-graph order;
    the requested value is kept in the result. ``n_max`` controls the
    base graph's part length and defaults to the smallest value giving a
    nonempty clique family.
    """
    kernel, witness, classes, part_digraph, cycle, part_cycle = derive_part_structure(h)
    k = len(kernel.vertices)
    if n_max is None:
        n_max = k
        while not behrend(n_max).members or all(
            1 + (k - 1) * d > n_max for d in behrend(n_max).members
        ):
            n_max += 1
    base = rs_graph(k, part_cycle, n_max)
    r = base.r
    m = n // r
    if m < 1:
        raise ValueError(f"n={n} too small: the base graph has {r} vertices")
    forcing = build_forcing(h, [list(c) for c in classes], part_digraph, m, seed)

    edges: list[tuple[int, int]] = []

    def block(x: int) -> range:
        return range((x - 1) * m + 1, x * m + 1)

    # item 1: each part's block union is transitive in global vertex order
    for part in range(1, k + 1):
        vs = [v for x in base.part_vertices(part) for v in block(x)]
        vs.sort()
        edges.extend(itertools.combinations(vs, 2))

    # item 2: non-edges of the base orient lower part -> higher part
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            for x in base.part_vertices(i):
                for y in base.part_vertices(j):
                    if not base.has_edge(x, y):
                        edges.extend(
                            (u, v) for u in block(x) for v in block(y)
                        )

    # item 3: one copy of the forcing construction per clique
    for clique in base.cliques:
        for (u, v) in forcing.cross_edges():
            pu, pv = forcing.part_of(u), forcing.part_of(v)
            au = (u - 1) % m + 1
            av = (v - 1) % m + 1
            edges.append(
                (block(clique[pu - 1])[au - 1], block(clique[pv - 1])[av - 1])
            )

    tournament = Tournament(r * m, edges)
    return BlowupTournament(
        base=base,
        pattern=h,
        tournament=tournament,
        m=m,
        kernel=kernel,
        witness_labeling=witness,
        classes=classes,
        part_digraph=part_digraph,
        kernel_cycle=cycle,
        forcing=forcing,
        requested_n=n,
    )


# -- audit 1: copy localization ------------------------------------------


@dataclass(frozen=True)
class LocalizationReport:
    """Every embedding of the pattern must thread a cycle-patterned tuple
    whose base projection is a patterned cycle of the base graph."""

    total_copies: int
    violations: tuple[Embedding, ...]
    special_tuples: int
    special_tuple_bound: Fraction  # n^l / r
    copy_bound: int  # |C| * n^(h-l)

    @property
    def ok(self) -> bool:
        return not self.violations


def _tuple_directions(part_cycle: Sequence[int]) -> list[bool]:
    """For each consecutive pattern position j -> j+1 (cyclically), True
    when the tuple edge must point from slot j+1 back to slot j."""
    length = len(part_cycle)
    return [
        part_cycle[j] < part_cycle[(j + 1) % length] for j in range(length)
    ]


def _count_special_tuples(b: BlowupTournament, limit: int) -> int:
    """Exhaustive count of the cycle-patterned tuples."""
    t = b.tournament
    pattern = b.base.cycle_pattern
    length = len(pattern)
    backwards = _tuple_directions(pattern)
    part_masks = []
    for idx in pattern:
        mask = 0
        for x in b.base.part_vertices(idx):
            for v in b.block(x):
                mask |= 1 << v
        part_masks.append(mask)
    count = 0

    def extend(j: int, first: int, current: int) -> Iterator[int]:
        # candidates for slot j+1 given slot j's vertex
        if backwards[j]:
            cand = t.inn[current]
        else:
            cand = t.out[current]
        yield from _bits(cand & part_masks[(j + 1) % length])

    def rec(j: int, first: int, current: int) -> int:
        nonlocal count
        if j == length - 1:
            # close the cycle: edge between slot l-1 and slot 0
            if backwards[j]:
                ok = t.has_edge(first, current)
            else:
                ok = t.has_edge(current, first)
            return 1 if ok else 0
        total = 0
        for nxt in extend(j, first, current):
            total += rec(j + 1, first, nxt)
            if count + total > limit:
                raise BudgetExceeded("special tuple enumeration budget", count=count)
        return total

    for first in _bits(part_masks[0]):
        count += rec(0, first, first)
    return count


def audit_copy_localization(
    b: BlowupTournament,
    h: Optional[OrientedGraph] = None,
    embedding_budget: int = 2_000_000,
) -> LocalizationReport:
    """Enumerate every embedding of the pattern and verify localization.

    For each embedding, some choice of image vertices in the cycle
    pattern's parts must realize the backward-edge tuple conditions, and
    its base projection must be a patterned cycle of the base graph.
    Violations are collected (and expected to be impossible).
    """
    pattern = h if h is not None else b.pattern
    t = b.tournament
    part_cycle = b.base.cycle_pattern
    length = len(part_cycle)
    backwards = _tuple_directions(part_cycle)
    total = 0
    violations: list[Embedding] = []
    for emb in enumerate_embeddings(t, pattern, limit=embedding_budget):
        total += 1
        slots: list[list[int]] = []
        for idx in part_cycle:
            slots.append(
                [v for v in emb.mapping if b.part_of(v) == idx]
            )
        found = False
        for combo in itertools.product(*slots):
            ok = True
            for j in range(length):
                u, w = combo[j], combo[(j + 1) % length]
                if backwards[j]:
                    if not t.has_edge(w, u):
                        ok = False
                        break
                elif not t.has_edge(u, w):
                    ok = False
                    break
            if ok:
                bases = [b.block_of(v) for v in combo]
                for j in range(length):
                    if not b.base.has_edge(bases[j], bases[(j + 1) % length]):
                        raise AuditError(
                            "tuple found whose base projection is not a cycle"
                        )
                found = True
                break
        if not found:
            violations.append(emb)
    special = _count_special_tuples(b, limit=embedding_budget)
    n = t.n
    return LocalizationReport(
        total_copies=total,
        violations=tuple(violations),
        special_tuples=special,
        special_tuple_bound=Fraction(n**length, b.base.r),
        copy_bound=special * n ** (pattern.n - length),
    )


# -- audit 2: farness ------------------------------------------------------


@dataclass(frozen=True)
class FarnessCertificate:
    """A family of pattern copies pairwise disjoint on cut-edges.

    ``certified_surviving`` = |family| - (number of reversed cut-edges):
    since the copies share no cut-edges and agree with the mutated
    tournament on cluster-edges, each reversed cut-edge can kill at most
    one copy, so a positive value proves a copy survives the mutation.
    """

    family: tuple[tuple[int, Embedding], ...]  # (clique index, global copy)
    per_clique: tuple[int, ...]
    reversed_cut_edges: int
    reversed_cluster_edges: int
    certified_surviving: int
    survivors_verified: int

    @property
    def count(self) -> int:
        return len(self.family)


def farness_certificate(
    b: BlowupTournament,
    mutated: Tournament,
    h: Optional[OrientedGraph] = None,
) -> FarnessCertificate:
    """Certify survival of pattern copies under an edge mutation.

    Builds the hybrid tournament agreeing with the blow-up on cut-edges
    and with the mutation on cluster-edges, certifies one completion per
    clique zone, pools the copies, and verifies the cut-edge
    disjointness plus the survival bound directly.
    """
    pattern = h if h is not None else b.pattern
    t = b.tournament
    if mutated.n != t.n:
        raise ValueError("mutated tournament has the wrong vertex count")
    cut_diffs = 0
    cluster_diffs = 0
    for (u, v) in t.edges:
        if not mutated.has_edge(u, v):
            if b.is_cut_pair(u, v):
                cut_diffs += 1
            else:
                cluster_diffs += 1

    # hybrid: cut-edges from the blow-up, cluster-edges from the mutation
    hybrid_edges = []
    for (u, v) in t.edges:
        if b.is_cut_pair(u, v):
            hybrid_edges.append((u, v))
        else:
            hybrid_edges.append((u, v) if mutated.has_edge(u, v) else (v, u))
    hybrid = Tournament(t.n, hybrid_edges)

    classes = [list(c) for c in b.classes]
    family: list[tuple[int, Embedding]] = []
    per_clique: list[int] = []
    m = b.m
    for ci in range(len(b.base.cliques)):
        zone = b.clique_zone(ci)
        local_of_global = {v: i + 1 for i, v in enumerate(zone)}
        zone_edges = []
        for i, u in enumerate(zone):
            for v in zone[i + 1 :]:
                if hybrid.has_edge(u, v):
                    zone_edges.append((local_of_global[u], local_of_global[v]))
                else:
                    zone_edges.append((local_of_global[v], local_of_global[u]))
        zone_t = Tournament(len(zone), zone_edges)
        cert = certify_completion(b.forcing, zone_t, pattern, classes)
        per_clique.append(cert.count)
        for emb in cert.embeddings:
            family.append(
                (ci, Embedding(tuple(zone[local - 1] for local in emb.mapping)))
            )

    # global cut-edge disjointness across the whole family
    used: dict[tuple[int, int], int] = {}
    for idx, (_, emb) in enumerate(family):
        for (u, v) in pattern.edges:
            a, bb = emb.mapping[u - 1], emb.mapping[v - 1]
            if not b.is_cut_pair(a, bb):
                continue
            key = (min(a, bb), max(a, bb))
            if key in used and used[key] != idx:
                raise AuditError(f"copies {used[key]} and {idx} share cut pair {key}")
            used[key] = idx

    survivors = 0
    for _, emb in family:
        if all(
            mutated.has_edge(emb.mapping[u - 1], emb.mapping[v - 1])
            for (u, v) in pattern.edges
        ):
            survivors += 1
    certified = len(family) - cut_diffs
    if survivors < certified:
        raise AuditError(
            f"only {survivors} copies survive; certificate promised {certified}"
        )
    return FarnessCertificate(
        family=tuple(family),
        per_clique=tuple(per_clique),
        reversed_cut_edges=cut_diffs,
        reversed_cluster_edges=cluster_diffs,
        certified_surviving=certified,
        survivors_verified=survivors,
    )
