"""Kernel operations: densities, embeddings, reversal distance,
transitive extraction."""

import itertools
from fractions import Fraction

import pytest

from tourkit.digraphs import (
    DistanceResult,
    OrientedGraph,
    Tournament,
    c3_pattern,
    count_automorphisms,
    count_embeddings,
    cyclic_triangle,
    density,
    distance_to_h_free,
    embedding_stats,
    enumerate_embeddings,
    enumerate_tournaments,
    find_embedding,
    random_tournament,
    single_edge_pattern,
    tournament_from_bits,
    transitive_subtournament,
    transitive_tournament,
)

from conftest import oracle_count_injections, random_oriented_graph


class TestDensity:
    def test_fully_oriented_pair(self):
        t = transitive_tournament(6)
        stats = density(t, [1, 2, 3], [4, 5, 6])
        assert stats.density == 1
        assert stats.dominant_xy
        assert stats.e_yx == 0

    def test_single_edge(self):
        t = cyclic_triangle()
        assert density(t, [1], [2]).density == 1
        assert density(t, [2], [1]).density == 0

    def test_matches_per_pair_enumeration(self, rng):
        t = random_tournament(10, rng)
        xs, ys = [1, 4, 7], [2, 5, 9]
        stats = density(t, xs, ys)
        expected = sum(1 for x in xs for y in ys if t.has_edge(x, y))
        assert stats.e_xy == expected
        assert stats.density == Fraction(expected, 9)
        assert stats.weight == Fraction(9, 100)

    def test_antisymmetry_on_random_samples(self, rng):
        t = random_tournament(12, rng)
        for _ in range(1000):
            size_x = rng.randrange(1, 6)
            size_y = rng.randrange(1, 6)
            pool = rng.sample(range(1, 13), size_x + size_y)
            xs, ys = pool[:size_x], pool[size_x:]
            assert density(t, xs, ys).density + density(t, ys, xs).density == 1

    def test_rejects_bad_arguments(self):
        t = cyclic_triangle()
        with pytest.raises(ValueError):
            density(t, [1], [1, 2])
        with pytest.raises(ValueError):
            density(t, [], [1])
        with pytest.raises(ValueError):
            density(t, [1], [9])


class TestEmbeddings:
    def test_c3_in_cyclic_triangle(self):
        stats = embedding_stats(cyclic_triangle(), c3_pattern())
        assert stats.embeddings == 3
        assert stats.automorphisms == 3
        assert stats.unlabeled == 1

    def test_c3_in_transitive(self):
        assert count_embeddings(transitive_tournament(3), c3_pattern()) == 0

    def test_against_naive_enumeration(self, rng):
        for _ in range(12):
            host = random_tournament(7, rng)
            pattern = random_oriented_graph(4, rng)
            assert count_embeddings(host, pattern) == oracle_count_injections(
                host, pattern
            )

    def test_oriented_host(self, rng):
        for _ in range(8):
            host = random_oriented_graph(6, rng)
            pattern = random_oriented_graph(3, rng)
            assert count_embeddings(host, pattern) == oracle_count_injections(
                host, pattern
            )

    def test_empty_pattern_embeds_once(self):
        assert count_embeddings(cyclic_triangle(), OrientedGraph(0, [])) == 1

    def test_pattern_larger_than_host(self):
        assert count_embeddings(cyclic_triangle(), transitive_tournament(4)) == 0

    def test_relabel_invariance(self, rng):
        host = random_tournament(6, rng)
        pattern = random_oriented_graph(3, rng)
        base = count_embeddings(host, pattern)
        for _ in range(10):
            perm = list(host.vertices)
            rng.shuffle(perm)
            assert count_embeddings(host.relabel(perm), pattern) == base

    def test_enumeration_matches_count(self, rng):
        host = random_tournament(6, rng)
        pattern = random_oriented_graph(3, rng)
        embeddings = list(enumerate_embeddings(host, pattern))
        assert len(embeddings) == count_embeddings(host, pattern)
        for emb in embeddings:
            assert emb.is_valid(host, pattern)

    def test_find_embedding_validity(self, rng):
        host = random_tournament(7, rng)
        emb = find_embedding(host, c3_pattern())
        if emb is not None:
            assert emb.is_valid(host, c3_pattern())
            assert count_embeddings(host, c3_pattern()) > 0


def oracle_distance(t: Tournament, pattern, cap: int):
    """All reversal subsets of size <= cap, smallest working size."""
    pairs = [(i, j) for i in t.vertices for j in t.vertices if i < j]
    for size in range(cap + 1):
        for subset in itertools.combinations(pairs, size):
            flipped = t.flip_pairs(subset)
            if count_embeddings(flipped, pattern) == 0:
                return size
    return None


class TestDistance:
    def test_cyclic_triangle_distance_one(self):
        result = distance_to_h_free(cyclic_triangle(), c3_pattern())
        assert result == DistanceResult(1, 1, True, result.flips)
        assert len(result.flips) == 1

    def test_transitive_distance_zero(self):
        assert distance_to_h_free(transitive_tournament(5), c3_pattern()).distance == 0

    def test_against_subset_enumeration(self, rng):
        for _ in range(4):
            t = random_tournament(6, rng)
            expected = oracle_distance(t, c3_pattern(), 3)
            result = distance_to_h_free(t, c3_pattern())
            assert result.exact
            if expected is not None:
                assert result.distance == expected

    def test_budget_exceeded_reports_lower_bound(self, rng):
        t = cyclic_triangle()
        result = distance_to_h_free(t, c3_pattern(), budget=0)
        assert not result.exact
        assert result.distance is None
        assert result.lower_bound >= 1

    def test_witness_flips_destroy_all_copies(self, rng):
        for _ in range(4):
            t = random_tournament(6, rng)
            result = distance_to_h_free(t, c3_pattern())
            flipped = t.flip_pairs(result.flips)
            assert count_embeddings(flipped, c3_pattern()) == 0

    def test_zero_distance_iff_no_copy_small(self, rng):
        patterns = [c3_pattern(), single_edge_pattern(), transitive_tournament(3)]
        for t in enumerate_tournaments(4):
            for pattern in patterns:
                has_copy = count_embeddings(t, pattern) > 0
                dist = distance_to_h_free(t, pattern).distance
                if dist is not None:
                    assert (dist == 0) == (not has_copy)
                else:
                    assert has_copy

    def test_zero_distance_iff_no_copy_sampled(self, rng):
        for _ in range(25):
            t = random_tournament(5, rng)
            pattern = random_oriented_graph(4, rng)
            result = distance_to_h_free(t, pattern)
            has_copy = count_embeddings(t, pattern) > 0
            if result.distance is not None:
                assert (result.distance == 0) == (not has_copy)
            else:
                assert has_copy


class TestTransitiveExtraction:
    def test_all_four_vertex_tournaments(self):
        for t in enumerate_tournaments(4):
            seq = transitive_subtournament(t, 3)
            assert seq is not None
            for i, u in enumerate(seq):
                for v in seq[i + 1 :]:
                    assert t.has_edge(u, v)

    def test_transitive_gives_topological_order(self):
        t = transitive_tournament(6)
        assert transitive_subtournament(t, 6) == [1, 2, 3, 4, 5, 6]

    def test_cyclic_triangle_fails(self):
        assert transitive_subtournament(cyclic_triangle(), 3) is None

    def test_random_eight_vertex(self, rng):
        for _ in range(500):
            t = random_tournament(8, rng)
            seq = transitive_subtournament(t, 4)
            assert seq is not None
            for i, u in enumerate(seq):
                for v in seq[i + 1 :]:
                    assert t.has_edge(u, v)

    def test_rejects_nonpositive_target(self):
        with pytest.raises(ValueError):
            transitive_subtournament(cyclic_triangle(), 0)


class TestTournamentType:
    def test_completeness_enforced(self):
        with pytest.raises(ValueError):
            Tournament(3, [(1, 2), (2, 3)])
        with pytest.raises(ValueError):
            OrientedGraph(3, [(1, 2), (2, 1)])
        with pytest.raises(ValueError):
            OrientedGraph(3, [(1, 1)])

    def test_adjacency_matrix_antisymmetry(self, rng):
        t = random_tournament(8, rng)
        a = t.adjacency_matrix()
        for i in range(8):
            assert a[i][i] == 0
            for j in range(8):
                if i != j:
                    assert a[i][j] + a[j][i] == 1

    def test_bit_roundtrip(self):
        for bits in range(64):
            t = tournament_from_bits(4, bits)
            assert len(t.edges) == 6

    def test_automorphism_count_c3(self):
        assert count_automorphisms(c3_pattern()) == 3
        assert count_automorphisms(transitive_tournament(4)) == 1
