"""Backedge graphs, monotone homomorphisms, ordered cores, the maximal
core and its odd cycle."""

import itertools

import pytest

from tourkit.coloring import chromatic_number
from tourkit.digraphs import c3_pattern, transitive_tournament
from tourkit.orderedhom import (
    LabeledGraph,
    backedge_graph,
    core_family,
    enumerate_ophs,
    find_oph,
    graph_chromatic_number,
    graph_two_colorable,
    is_ordered_core,
    odd_cycle_certificate,
    order_isomorphic,
    ordered_core,
    select_k,
    verify_core_projection,
)

from conftest import oracle_monotone_homs, random_labeled_graph, random_oriented_graph


def path_13_23():
    return LabeledGraph([1, 2, 3], [(1, 3), (2, 3)])


def path_12_23():
    return LabeledGraph([1, 2, 3], [(1, 2), (2, 3)])


class TestBackedgeGraph:
    def test_c3_natural_labeling(self):
        g = backedge_graph(c3_pattern(), (1, 2, 3))
        assert g.edges == frozenset({(1, 3)})

    def test_transitive_topological_labeling_is_empty(self):
        g = backedge_graph(transitive_tournament(5), (1, 2, 3, 4, 5))
        assert not g.edges

    def test_all_labelings_match_definition(self, rng):
        h = random_oriented_graph(4, rng)
        for labeling in itertools.permutations(range(1, 5)):
            g = backedge_graph(h, labeling)
            expected = set()
            for (u, v) in h.edges:
                a, b = labeling[u - 1], labeling[v - 1]
                if a > b:
                    expected.add((b, a))
            assert g.edges == frozenset(expected)

    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            backedge_graph(c3_pattern(), (1, 1, 2))


class TestFindOph:
    def test_identity(self):
        g = path_12_23()
        m = find_oph(g, g)
        assert m is not None and m.is_valid(g, g)

    def test_collapsing_map(self):
        m = find_oph(path_13_23(), LabeledGraph([2, 3], [(2, 3)]))
        assert m is not None
        assert m.as_dict() == {1: 2, 2: 2, 3: 3}

    def test_no_map_to_shifted_edge(self):
        assert find_oph(path_12_23(), LabeledGraph([1, 2], [(1, 2)])) is None

    def test_against_exhaustive_enumeration(self, rng):
        for _ in range(40):
            g = random_labeled_graph(range(1, 5), 0.5, rng)
            target = random_labeled_graph(range(1, 5), 0.5, rng)
            oracle = oracle_monotone_homs(g, target)
            found = find_oph(g, target)
            assert (found is not None) == bool(oracle)
            ours = [m.as_dict() for m in enumerate_ophs(g, target)]
            assert sorted(ours, key=sorted) == sorted(
                (dict(m) for m in oracle), key=sorted
            )

    def test_composition_closure(self, rng):
        for _ in range(40):
            a = random_labeled_graph(range(1, 5), 0.4, rng)
            b = random_labeled_graph(range(1, 6), 0.6, rng)
            c = random_labeled_graph(range(1, 6), 0.7, rng)
            f = find_oph(a, b)
            g = find_oph(b, c)
            if f is None or g is None:
                continue
            composed = g.compose(f)
            assert composed.is_valid(a, c)


class TestOrderedCore:
    def test_single_edge_is_its_own_core(self):
        e = LabeledGraph([1, 2], [(1, 2)])
        assert ordered_core(e) == e

    def test_path_13_23_core(self):
        # two minimum targets exist ({1,3} and {2,3}); the lexicographically
        # least label set wins
        core = ordered_core(path_13_23())
        assert core == LabeledGraph([1, 3], [(1, 3)])

    def test_path_12_23_is_core(self):
        assert ordered_core(path_12_23()) == path_12_23()
        assert is_ordered_core(path_12_23())

    def test_core_matches_subset_oracle(self, rng):
        for _ in range(25):
            g = random_labeled_graph(range(1, 6), 0.45, rng)
            core = ordered_core(g)
            # oracle: smallest-lex minimal subset with a monotone hom
            expected = None
            for size in range(1, g.n + 1):
                for subset in itertools.combinations(g.vertices, size):
                    target = g.induced(subset)
                    if oracle_monotone_homs(g, target):
                        expected = target
                        break
                if expected is not None:
                    break
            assert core == expected

    def test_idempotence_exhaustive_small(self):
        for n in range(1, 5):
            pairs = list(itertools.combinations(range(1, n + 1), 2))
            for code in range(1 << len(pairs)):
                g = LabeledGraph(
                    range(1, n + 1),
                    (pairs[i] for i in range(len(pairs)) if (code >> i) & 1),
                )
                core = ordered_core(g)
                assert order_isomorphic(ordered_core(core), core)

    def test_idempotence_sampled(self, rng):
        for _ in range(60):
            g = random_labeled_graph(range(1, 7), 0.5, rng)
            core = ordered_core(g)
            assert order_isomorphic(ordered_core(core), core)
            assert is_ordered_core(core)

    def test_cores_have_no_isolated_vertices(self, rng):
        for _ in range(40):
            g = random_labeled_graph(range(1, 7), 0.4, rng)
            core = ordered_core(g)
            if core.n > 1:
                assert all(core.neighbors(v) for v in core.vertices)


class TestCoreFamily:
    def test_transitive_family_contains_edgeless(self):
        family = core_family(transitive_tournament(4))
        assert any(not member.edges for member in family.members)

    def test_c3_members_are_cores(self):
        family = core_family(c3_pattern())
        for member in family.members:
            assert is_ordered_core(member)

    def test_witnesses_reproduce_members(self, rng):
        h = random_oriented_graph(4, rng)
        family = core_family(h)
        for member, witness in zip(family.members, family.witnesses):
            regenerated = ordered_core(backedge_graph(h, witness))
            assert order_isomorphic(regenerated, member)

    def test_antisymmetry(self, rng):
        for h in (c3_pattern(), random_oriented_graph(4, rng)):
            family = core_family(h)
            for i, a in enumerate(family.members):
                for j, b in enumerate(family.members):
                    if i < j:
                        both = (
                            find_oph(a, b) is not None
                            and find_oph(b, a) is not None
                        )
                        assert not both or order_isomorphic(a, b)


class TestSelectK:
    def test_acyclic_pattern_gives_edgeless_kernel(self):
        k = select_k(transitive_tournament(4))
        assert not k.edges

    def test_c3_kernel_is_maximal(self):
        family = core_family(c3_pattern())
        k = select_k(family)
        for member in family.members:
            if not order_isomorphic(member, k):
                assert find_oph(member, k) is None

    def test_hard_pattern_kernel_has_odd_cycle(self, minimal_hard, hard_family):
        k = select_k(hard_family)
        assert not graph_two_colorable(k)
        cycle = odd_cycle_certificate(k)
        assert len(cycle) % 2 == 1 and len(cycle) >= 3
        for i, v in enumerate(cycle):
            assert k.has_edge(v, cycle[(i + 1) % len(cycle)])


class TestRigidity:
    def test_ophs_between_isomorphic_cores_are_bijective(self, rng):
        # order-isomorphic copies of a core admit only bijective monotone homs
        count = 0
        for _ in range(60):
            g = random_labeled_graph(range(1, 6), 0.5, rng)
            core = ordered_core(g)
            if core.n < 2:
                continue
            shift = LabeledGraph(
                [v + 3 for v in core.vertices],
                [(a + 3, b + 3) for a, b in core.edges],
            )
            for oph in enumerate_ophs(core, shift):
                count += 1
                assert oph.is_bijective()
        assert count > 0


class TestBackedgeChromatic:
    def test_identity_small(self, rng):
        # digraph chromatic number equals the labeling-minimized graph
        # chromatic number of the backedge graph
        for _ in range(25):
            h = random_oriented_graph(4, rng)
            direct = chromatic_number(h)
            best = min(
                graph_chromatic_number(backedge_graph(h, labeling))
                for labeling in itertools.permutations(range(1, 5))
            )
            best = max(best, 1)
            assert best == direct


class TestCoreProjection:
    def test_projection_restricts_to_isomorphism(self, minimal_hard, hard_family):
        # few labelings project onto the kernel at all, so sweep them all
        k = select_k(hard_family)
        checked = 0
        for labeling in itertools.permutations(range(1, minimal_hard.n + 1)):
            g = backedge_graph(minimal_hard, labeling)
            f = find_oph(g, k)
            if f is None:
                continue
            checked += 1
            assert verify_core_projection(g, k, f)
        assert checked > 0


class TestOddCycle:
    def test_triangle(self):
        k3 = LabeledGraph([1, 2, 3], [(1, 2), (1, 3), (2, 3)])
        assert sorted(odd_cycle_certificate(k3)) == [1, 2, 3]

    def test_five_cycle(self):
        c5 = LabeledGraph(range(1, 6), [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
        cycle = odd_cycle_certificate(c5)
        assert len(cycle) == 5

    def test_bipartite_rejected(self):
        square = LabeledGraph(range(1, 5), [(1, 2), (2, 3), (3, 4), (1, 4)])
        with pytest.raises(ValueError):
            odd_cycle_certificate(square)


class TestGraphChromatic:
    def test_small_values(self):
        assert graph_chromatic_number(LabeledGraph([1], [])) == 1
        assert graph_chromatic_number(LabeledGraph([1, 2], [(1, 2)])) == 2
        k4 = LabeledGraph(range(1, 5), itertools.combinations(range(1, 5), 2))
        assert graph_chromatic_number(k4) == 4
        c5 = LabeledGraph(range(1, 6), [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
        assert graph_chromatic_number(c5) == 3
