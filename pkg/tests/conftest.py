"""Shared fixtures and brute-force oracles.

Oracles here are deliberately naive re-implementations (full enumeration,
exhaustive assignment scans) kept independent of the library's search
paths; tests freeze expected values computed by these oracles.
"""

import itertools
import random
import sys
from pathlib import Path

import pytest

try:
    import tourkit  # noqa: F401
except ImportError:  # raw checkout without an editable install
    sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tourkit.coloring import smallest_non_two_colorable_tournament
from tourkit.digraphs import OrientedGraph, Tournament
from tourkit.forcing import build_forcing, certify_completion
from tourkit.lowerbound import blowup_tournament, derive_part_structure
from tourkit.orderedhom import LabeledGraph, core_family


@pytest.fixture(scope="session")
def minimal_hard() -> Tournament:
    return smallest_non_two_colorable_tournament()


@pytest.fixture(scope="session")
def hard_family(minimal_hard):
    return core_family(minimal_hard)


@pytest.fixture(scope="session")
def hard_structure(minimal_hard):
    return derive_part_structure(minimal_hard)


def find_certifying_seed(h, classes, d, m, max_seed=4000):
    """Smallest seed whose construction certifies a copy against the
    all-ascending completion (the cluster order used by the blow-up)."""
    cls = [list(c) for c in classes]
    for seed in range(max_seed):
        f = build_forcing(h, cls, d, m, seed)
        inner = [
            (a, b)
            for part in range(1, f.k + 1)
            for a, b in itertools.combinations(f.part_vertices(part), 2)
        ]
        completion = f.completion(inner)
        if certify_completion(f, completion, h, cls).count >= 1:
            return seed
    raise AssertionError("no certifying seed found within the search budget")


@pytest.fixture(scope="session")
def good_seed(minimal_hard, hard_structure):
    _, _, classes, d, _, _ = hard_structure
    return find_certifying_seed(minimal_hard, classes, d, 2)


@pytest.fixture(scope="session")
def micro_blowup(minimal_hard, good_seed):
    # one clique, blocks of two: 50 vertices
    return blowup_tournament(minimal_hard, 50, seed=good_seed, n_max=5)


@pytest.fixture(scope="session")
def farness_blowup(minimal_hard, good_seed):
    # eight cliques, blocks of two: 100 vertices
    return blowup_tournament(minimal_hard, 100, seed=good_seed, n_max=10)


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(0xC0FFEE)


# -- oracles --------------------------------------------------------------


def oracle_count_injections(host: OrientedGraph, pattern: OrientedGraph) -> int:
    """Naive enumeration of all injections with edge preservation."""
    count = 0
    for image in itertools.permutations(host.vertices, pattern.n):
        if all(host.has_edge(image[u - 1], image[v - 1]) for u, v in pattern.edges):
            count += 1
    return count


def oracle_two_colorable(d: OrientedGraph) -> bool:
    """Exhaustive scan of all 2^n class assignments."""
    for code in range(1 << d.n):
        cls0 = [v for v in d.vertices if not (code >> (v - 1)) & 1]
        cls1 = [v for v in d.vertices if (code >> (v - 1)) & 1]
        ok = True
        for cls in (cls0, cls1):
            if cls and not d.induced(cls).is_acyclic():
                ok = False
                break
        if ok:
            return True
    return False


def oracle_chromatic(d: OrientedGraph) -> int:
    """Least k over exhaustive k^n assignments."""
    for k in range(1, d.n + 1):
        for assignment in itertools.product(range(k), repeat=d.n):
            ok = True
            for c in range(k):
                cls = [v for v in d.vertices if assignment[v - 1] == c]
                if cls and not d.induced(cls).is_acyclic():
                    ok = False
                    break
            if ok:
                return k
    return d.n


def oracle_monotone_homs(g: LabeledGraph, target: LabeledGraph):
    """All monotone edge-preserving maps, by full enumeration."""
    gvs = g.vertices
    tvs = target.vertices
    out = []
    for images in itertools.combinations_with_replacement(tvs, len(gvs)):
        m = dict(zip(gvs, images))
        if all(target.has_edge(m[a], m[b]) for a, b in g.edges):
            out.append(m)
    return out


def oracle_max_ap_free(n: int) -> int:
    """Exact maximum size of a progression-free subset of 1..n, by
    branch and bound over elements in increasing order."""
    best = 0

    def rec(next_value: int, chosen: list[int], chosen_set: set[int]) -> None:
        nonlocal best
        if len(chosen) + (n - next_value + 1) <= best:
            return
        if next_value > n:
            best = max(best, len(chosen))
            return
        # try including next_value
        ok = True
        for a in chosen:
            if (a + next_value) % 2 == 0 and (a + next_value) // 2 in chosen_set:
                ok = False
                break
        if ok:
            chosen.append(next_value)
            chosen_set.add(next_value)
            rec(next_value + 1, chosen, chosen_set)
            chosen.pop()
            chosen_set.remove(next_value)
        rec(next_value + 1, chosen, chosen_set)

    rec(1, [], set())
    return best


def random_oriented_graph(n: int, rng: random.Random) -> OrientedGraph:
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            state = rng.randrange(3)
            if state == 1:
                edges.append((i, j))
            elif state == 2:
                edges.append((j, i))
    return OrientedGraph(n, edges)


def random_labeled_graph(labels, p: float, rng: random.Random) -> LabeledGraph:
    labels = list(labels)
    edges = [
        (a, b)
        for a, b in itertools.combinations(labels, 2)
        if rng.random() < p
    ]
    return LabeledGraph(labels, edges)
