import itertools

import numpy as np
import pytest

from sigmat.core import first_zagreb, sigma_t_classic, sigma_t_f, difference_profile
from sigmat.graphical import (
    SmallGraph,
    antiregular_sequence,
    batch_has_connected_realization,
    batch_is_graphical,
    has_connected_realization,
    irr,
    is_graphical,
    is_tree_sequence,
    realizations,
    sigma,
)

from oracles import realizable_multisets


def sorted_tuples(n):
    return list(itertools.combinations_with_replacement(range(n - 1, -1, -1), n))


class TestSmallGraph:
    def test_rejects_loops_and_parallel_edges(self):
        with pytest.raises(ValueError):
            SmallGraph(3, frozenset({(1, 1)}))
        with pytest.raises(ValueError):
            SmallGraph.from_edges(3, [(0, 1), (1, 0)])
        with pytest.raises(ValueError):
            SmallGraph(2, frozenset({(0, 2)}))

    def test_degrees_and_connectivity(self):
        g = SmallGraph.from_edges(4, [(0, 1), (1, 2)])
        assert g.degrees() == [1, 2, 1, 0]
        assert not g.is_connected()
        assert SmallGraph.from_edges(3, [(0, 1), (1, 2)]).is_connected()

    def test_edge_indices_on_star(self):
        g = SmallGraph.from_edges(5, [(0, k) for k in range(1, 5)])
        assert irr(g) == 12
        assert sigma(g) == 36

    def test_edge_indices_vanish_on_regular(self):
        cycle = SmallGraph.from_edges(6, [(k, (k + 1) % 6) for k in range(6)])
        k4 = SmallGraph.from_edges(4, itertools.combinations(range(4), 2))
        for g in (cycle, k4):
            assert irr(g) == 0 and sigma(g) == 0


class TestIsGraphical:
    def test_examples(self):
        assert is_graphical((1, 1, 1, 2, 2, 2, 3))
        assert is_graphical((4, 4, 4, 4, 4))
        assert not is_graphical((3, 3, 3, 1))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            is_graphical((4, 1, 1, 1))
        with pytest.raises(ValueError):
            is_graphical((1, 1, -1))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_matches_edge_subset_enumeration(self, n):
        real = realizable_multisets(n)
        for seq in sorted_tuples(n):
            assert is_graphical(seq) == (seq in real)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_connected_matches_edge_subset_enumeration(self, n):
        real = realizable_multisets(n, connected=True)
        for seq in sorted_tuples(n):
            assert has_connected_realization(seq) == (seq in real)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_batch_matches_scalar(self, n):
        arr = np.array(sorted_tuples(n))
        assert batch_is_graphical(arr).tolist() == [is_graphical(s) for s in arr.tolist()]
        assert batch_has_connected_realization(arr).tolist() == [
            has_connected_realization(s) for s in arr.tolist()
        ]


class TestTreeAndConnected:
    def test_tree_sequences(self):
        assert is_tree_sequence((2, 2, 2, 1, 1))
        assert is_tree_sequence((4, 1, 1, 1, 1))
        assert not is_tree_sequence((2, 2, 2, 2))
        assert not is_tree_sequence((0,))

    def test_connected_examples(self):
        assert has_connected_realization((1, 1, 1, 2, 2, 2, 3))
        assert not has_connected_realization((1, 1, 1, 1))
        assert has_connected_realization(antiregular_sequence(5))

    @pytest.mark.parametrize("n", range(2, 9))
    def test_every_tree_sequence_is_connected_realizable(self, n):
        for seq in sorted_tuples(n):
            if is_tree_sequence(seq):
                assert is_graphical(seq) and has_connected_realization(seq)
                if n <= 7:
                    assert next(realizations(seq, connected_only=True), None) is not None


class TestRealizations:
    def test_single_edge(self):
        graphs = list(realizations((1, 1)))
        assert graphs == [SmallGraph(2, frozenset({(0, 1)}))]

    def test_unrealizable(self):
        assert list(realizations((3, 3, 3, 1))) == []

    def test_refuses_large_n(self):
        with pytest.raises(ValueError):
            next(realizations([1] * 10))

    @pytest.mark.parametrize("n", range(1, 6))
    def test_counts_match_edge_subset_enumeration(self, n):
        # labeled graphs whose degree vector is exactly the canonical sequence
        for seq in sorted_tuples(n):
            assert sum(1 for _ in realizations(seq)) == _labeled_count(seq)

    def test_produced_graphs_have_the_sequence(self):
        seq = (3, 2, 2, 2, 1, 1, 1)
        graphs = list(realizations(seq))
        assert len(set(graphs)) == len(graphs)
        for g in graphs:
            assert tuple(g.degrees()) == seq

    def test_figure_sequence_edge_irregularities(self):
        # every labeled realization of this sequence has irr 4 or 6
        values = {irr(g) for g in realizations((1, 1, 1, 2, 2, 2, 3))}
        assert values == {4, 6}

    @pytest.mark.parametrize("n", range(1, 9))
    def test_zagreb_identity(self, n):
        for seq in sorted_tuples(n):
            if not is_graphical(seq):
                continue
            for g in realizations(seq):
                deg = g.degrees()
                assert sigma_t_classic(deg) == n * first_zagreb(deg) - 4 * g.m**2


def _labeled_count(seq):
    n = len(seq)
    count = 0
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        deg = [0] * n
        for k, (u, v) in enumerate(pairs):
            if mask >> k & 1:
                deg[u] += 1
                deg[v] += 1
        count += tuple(deg) == tuple(seq)
    return count


class TestAntiregular:
    def test_examples(self):
        assert antiregular_sequence(4) == (3, 2, 2, 1)
        assert antiregular_sequence(5) == (4, 3, 2, 2, 1)
        assert antiregular_sequence(4, connected=False) == (2, 1, 1, 0)

    def test_rejects_small(self):
        with pytest.raises(ValueError):
            antiregular_sequence(3)

    @pytest.mark.parametrize("n", range(4, 9))
    def test_realizable(self, n):
        conn = antiregular_sequence(n)
        disc = antiregular_sequence(n, connected=False)
        assert is_graphical(conn) and has_connected_realization(conn)
        assert is_graphical(disc) and not has_connected_realization(disc)
        assert len(set(conn)) == n - 1 == len(set(disc))
        if n <= 7:
            assert next(realizations(conn, connected_only=True), None) is not None

    @pytest.mark.parametrize("n", range(4, 30))
    def test_variants_share_profile(self, n):
        a = difference_profile(antiregular_sequence(n))
        b = difference_profile(antiregular_sequence(n, connected=False))
        assert a == b
        for f in (0.1, 0.5, 1.0, 2.0):
            assert sigma_t_f(a, f) == sigma_t_f(b, f)

    @pytest.mark.parametrize("n", range(4, 9))
    def test_only_graphical_covering_sequence(self, n):
        covering = [tuple(sorted(list(range(1, n)) + [r], reverse=True)) for r in range(1, n)]
        assert [s for s in covering if is_graphical(s)] == [antiregular_sequence(n)]
