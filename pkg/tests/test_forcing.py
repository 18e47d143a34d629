"""Tuple collections, the k-partite construction, certification, and
exhaustive forcing."""

import itertools
from fractions import Fraction

import pytest

from tourkit.digraphs import (
    OrientedGraph,
    c3_pattern,
    count_embeddings,
    single_edge_pattern,
    transitive_tournament,
)
from tourkit.errors import BudgetExceeded
from tourkit.forcing import (
    KPartiteTournament,
    build_forcing,
    certify_completion,
    disjoint_tuples,
    forces_exhaustive,
    forcing_parameters,
    search_min_forcing,
)


def four_cycle_forcing() -> KPartiteTournament:
    # parts {1,2} and {3,4}; cross edges form the directed cycle
    # 1 -> 3 -> 2 -> 4 -> 1
    return KPartiteTournament(2, 2, [(1, 3), (3, 2), (2, 4), (4, 1)])


class TestParameters:
    def test_gamma_closed_form(self):
        p = forcing_parameters(3)
        assert p.gamma == Fraction(1, 2**9 * 8 * 81)
        assert forcing_parameters(5).gamma == Fraction(1, 2**25 * 8 * 625)

    def test_rejects_tiny_patterns(self):
        with pytest.raises(ValueError):
            forcing_parameters(1)


class TestDisjointTuples:
    def test_two_by_two_keeps_everything(self):
        coll = disjoint_tuples(2, 2)
        assert len(coll.tuples) == 4
        assert coll.verify()

    def test_stated_examples(self):
        coll = disjoint_tuples(4, 3)
        assert coll.verify()
        assert len(coll.tuples) >= 2  # ceil(16/9)
        coll = disjoint_tuples(8, 4)
        assert coll.verify()
        assert len(coll.tuples) >= 4

    def test_size_bound_over_grid(self):
        for k in range(2, 6):
            for t in range(1, 13):
                coll = disjoint_tuples(t, k)
                assert len(coll.tuples) * k * k >= t * t
                assert coll.verify()

    def test_k_one_rejected(self):
        with pytest.raises(ValueError):
            disjoint_tuples(5, 1)

    def test_pairwise_property_is_verified_property(self):
        coll = disjoint_tuples(6, 3)
        for a, b in itertools.combinations(coll.tuples, 2):
            assert sum(x == y for x, y in zip(a, b)) <= 1


class TestBuildForcing:
    def test_deterministic_replay(self):
        h = c3_pattern()
        classes = [[1, 2], [3]]
        d = OrientedGraph(2, [])
        f1 = build_forcing(h, classes, d, 4, seed=99)
        f2 = build_forcing(h, classes, d, 4, seed=99)
        assert list(f1.cross_edges()) == list(f2.cross_edges())

    def test_seeds_differ(self):
        h = c3_pattern()
        classes = [[1, 2], [3]]
        d = OrientedGraph(2, [])
        base = set(build_forcing(h, classes, d, 4, seed=0).cross_edges())
        differing = sum(
            1
            for seed in range(1, 101)
            if set(build_forcing(h, classes, d, 4, seed=seed).cross_edges()) != base
        )
        assert differing >= 95  # 16 coins per pair; collisions are rare

    def test_d_edges_are_deterministic_full_pairs(self):
        h = single_edge_pattern()
        d = OrientedGraph(2, [(1, 2)])
        f = build_forcing(h, [[1], [2]], d, 3, seed=5)
        assert f.cross_density(1, 2) == 1
        assert (1, 2) in f.deterministic_pairs

    def test_invalid_coloring_rejected(self):
        h = c3_pattern()
        with pytest.raises(ValueError):
            build_forcing(h, [[1, 2, 3], []], OrientedGraph(2, []), 3, seed=0)
        with pytest.raises(ValueError):
            # C3 has 3 -> 1, violating class {1,2} -> class {3}
            build_forcing(h, [[1, 2], [3]], OrientedGraph(2, [(1, 2)]), 3, seed=0)

    def test_violating_pair_is_named(self):
        h = c3_pattern()
        with pytest.raises(ValueError, match=r"3 -> 1"):
            build_forcing(h, [[1, 2], [3]], OrientedGraph(2, [(1, 2)]), 3, seed=0)


class TestCertifyCompletion:
    def test_every_completion_of_the_four_cycle(self):
        f = four_cycle_forcing()
        h = c3_pattern()
        classes = [[1, 2], [3]]
        for completion in f.completions():
            cert = certify_completion(f, completion, h, classes)
            assert cert.count >= 1
            for emb in cert.embeddings:
                assert emb.is_valid(completion, h)

    def test_cross_disjointness_is_checked(self):
        f = four_cycle_forcing()
        h = c3_pattern()
        for completion in f.completions():
            cert = certify_completion(f, completion, h, [[1, 2], [3]])
            pairs = set()
            for emb in cert.embeddings:
                for (u, v) in h.edges:
                    a, b = emb.apply(u), emb.apply(v)
                    if f.part_of(a) != f.part_of(b):
                        key = (min(a, b), max(a, b))
                        assert key not in pairs
                        pairs.add(key)

    def test_deterministic_cross_edges_always_certify(self):
        h = single_edge_pattern()
        d = OrientedGraph(2, [(1, 2)])
        f = build_forcing(h, [[1], [2]], d, 3, seed=1)
        for completion in f.completions():
            cert = certify_completion(f, completion, h, [[1], [2]])
            assert cert.count >= 1

    def test_gamma_target_is_reported(self):
        f = four_cycle_forcing()
        completion = next(f.completions())
        cert = certify_completion(f, completion, c3_pattern(), [[1, 2], [3]])
        assert cert.gamma == forcing_parameters(3).gamma
        assert cert.target == cert.gamma * 4

    def test_rejects_non_completion(self):
        f = four_cycle_forcing()
        other = transitive_tournament(4)
        with pytest.raises(ValueError):
            certify_completion(f, other, c3_pattern(), [[1, 2], [3]])


def oracle_forces(f: KPartiteTournament, h) -> bool:
    """Independent completion enumeration via explicit tournaments."""
    return all(count_embeddings(comp, h) > 0 for comp in f.completions())


class TestForcesExhaustive:
    def test_four_cycle_forces_c3(self):
        assert forces_exhaustive(four_cycle_forcing(), c3_pattern())

    def test_one_directional_fails(self):
        f = KPartiteTournament(2, 2, [(1, 3), (1, 4), (2, 3), (2, 4)])
        assert not forces_exhaustive(f, c3_pattern())

    def test_matches_independent_oracle(self, rng):
        h = c3_pattern()
        for _ in range(20):
            edges = []
            for a in (1, 2):
                for b in (3, 4):
                    edges.append((a, b) if rng.getrandbits(1) else (b, a))
            f = KPartiteTournament(2, 2, edges)
            assert forces_exhaustive(f, h) == oracle_forces(f, h)

    def test_budget_refusal(self):
        f = build_forcing(
            single_edge_pattern(), [[1], [2]], OrientedGraph(2, [(1, 2)]), 6, seed=0
        )
        with pytest.raises(BudgetExceeded):
            forces_exhaustive(f, single_edge_pattern(), max_inner_pairs=10)


class TestSearchMinForcing:
    def test_c3_needs_parts_of_two(self):
        found = search_min_forcing(c3_pattern(), 3)
        assert found is not None and found.m == 2
        assert forces_exhaustive(found, c3_pattern())
        # its cross edges contain a directed cycle, so no completion is
        # transitive
        assert any(
            not comp.is_transitive() for comp in found.completions()
        )
        assert all(not comp.is_transitive() for comp in found.completions())

    def test_single_edge_needs_parts_of_one(self):
        found = search_min_forcing(single_edge_pattern(), 2)
        assert found is not None and found.m == 1

    def test_transitive_triangle(self):
        pattern = transitive_tournament(3)
        found = search_min_forcing(pattern, 3)
        assert found is not None
        assert forces_exhaustive(found, pattern)
        # parts of one cannot host three vertices
        assert found.m == 2

    def test_non_two_colorable_rejected(self, minimal_hard):
        with pytest.raises(ValueError):
            search_min_forcing(minimal_hard, 2)


class TestKPartiteType:
    def test_inner_pairs_carry_no_edge(self):
        f = four_cycle_forcing()
        assert not f.has_edge(1, 2) and not f.has_edge(2, 1)
        assert len(f.inner_pairs()) == 2

    def test_rejects_incomplete_cross(self):
        with pytest.raises(ValueError):
            KPartiteTournament(2, 2, [(1, 3)])

    def test_rejects_inner_edge(self):
        with pytest.raises(ValueError):
            KPartiteTournament(2, 2, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)])

    def test_completion_agreement(self):
        f = four_cycle_forcing()
        for comp in f.completions():
            assert f.agrees_with(comp)
