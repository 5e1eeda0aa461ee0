import itertools

import pytest

from sigmat.enumeration import (
    Domain,
    DomainKind,
    candidate_count,
    domain_size,
    enumerate_domain,
    shard,
)
from sigmat.extremal import distinct_pairs, sequence_multiplicities
from sigmat.graphical import has_connected_realization, is_graphical, realizations

from oracles import nonincreasing_tuples, realizable_multisets

KINDS = [DomainKind.INTEGER, DomainKind.GRAPHICAL, DomainKind.TREE, DomainKind.CHEMICAL]


def brute_force(domain):
    n = domain.n
    base = nonincreasing_tuples(n, domain.lo, domain.hi)
    if domain.kind is DomainKind.GRAPHICAL:
        return {s for s in base if is_graphical(s)}
    if domain.kind is DomainKind.TREE:
        return {s for s in base if sum(s) == 2 * n - 2}
    if domain.kind is DomainKind.CHEMICAL:
        test = is_graphical if domain.graphical_only else has_connected_realization
        return {s for s in base if test(s)}
    return base


class TestExamples:
    def test_trees_n4(self):
        d = Domain(DomainKind.TREE, 4)
        assert list(enumerate_domain(d)) == [(3, 1, 1, 1), (2, 2, 1, 1)]
        assert domain_size(d) == 2

    def test_integer_n4(self):
        d = Domain(DomainKind.INTEGER, 4, 1, 3)
        assert domain_size(d) == 15 == len(list(enumerate_domain(d)))

    def test_chemical_n5_against_realization_oracle(self):
        found = set(enumerate_domain(Domain(DomainKind.CHEMICAL, 5)))
        assert (4, 1, 1, 1, 1) in found and (2, 2, 2, 2, 2) in found
        expected = {
            s for s in nonincreasing_tuples(5, 0, 4)
            if next(realizations(s, connected_only=True), None) is not None
        }
        assert found == expected
        assert all(1 <= v <= 4 for s in found for v in s)

    def test_graphical_n4_count_matches_edge_enumeration(self):
        d = Domain(DomainKind.GRAPHICAL, 4)
        assert domain_size(d) == len(realizable_multisets(4)) == 11

    def test_graphical_bounds(self):
        d = Domain(DomainKind.GRAPHICAL, 6, lo=1)
        assert all(min(s) >= 1 for s in enumerate_domain(d))


class TestValidation:
    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(kind=DomainKind.INTEGER, n=3),
            dict(kind=DomainKind.INTEGER, n=5, lo=0),
            dict(kind=DomainKind.INTEGER, n=5, lo=3, hi=2),
            dict(kind=DomainKind.INTEGER, n=5, hi=5),
            dict(kind=DomainKind.GRAPHICAL, n=5, hi=5),
            dict(kind=DomainKind.TREE, n=1),
            dict(kind=DomainKind.CHEMICAL, n=6, hi=5),
            dict(kind=DomainKind.INTEGER, n=5, prefixes=((1, 2),)),
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            Domain(**kwargs)

    def test_round_trip(self):
        d = Domain(DomainKind.CHEMICAL, 9, graphical_only=True, prefixes=((4, 4), (3,)))
        assert Domain.from_dict(d.to_dict()) == d


class TestCompleteness:
    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("n", range(4, 9))
    def test_matches_brute_force(self, kind, n):
        d = Domain(kind, n)
        stream = list(enumerate_domain(d))
        assert len(stream) == len(set(stream))
        assert set(stream) == brute_force(d)
        assert stream == sorted(stream, reverse=True)
        assert domain_size(d) == len(stream)

    @pytest.mark.parametrize("n", range(4, 9))
    def test_chemical_graphical_only(self, n):
        d = Domain(DomainKind.CHEMICAL, n, graphical_only=True)
        assert set(enumerate_domain(d)) == brute_force(d)

    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("n", [4, 7, 10])
    def test_candidate_count_is_raw_size(self, kind, n):
        d = Domain(kind, n)
        raw = nonincreasing_tuples(n, d.lo, d.hi) if n < 9 else None
        if kind is DomainKind.TREE:
            expected = sum(1 for s in (raw or _tree_brute(n)) if sum(s) == 2 * n - 2)
        elif raw is not None:
            expected = len(raw)
        else:
            expected = len(list(itertools.combinations_with_replacement(range(d.lo, d.hi + 1), n)))
        assert candidate_count(d) == expected

    @pytest.mark.parametrize("n", range(2, 20))
    def test_tree_domain_is_partition_count(self, n):
        # tree sequences on n vertices <-> partitions of n-2 into at most n parts
        assert domain_size(Domain(DomainKind.TREE, n)) == _partitions(n - 2)


def _tree_brute(n):
    return itertools.combinations_with_replacement(range(n - 1, 0, -1), n)


def _partitions(m):
    ways = [1] + [0] * m
    for part in range(1, m + 1):
        for total in range(part, m + 1):
            ways[total] += ways[total - part]
    return ways[m]


class TestChemicalProperties:
    @pytest.mark.parametrize("n", range(4, 26))
    def test_emitted_sequences(self, n):
        for s in enumerate_domain(Domain(DomainKind.CHEMICAL, n)):
            assert sum(s) % 2 == 0 and min(s) >= 1 and max(s) <= 4 and sum(s) >= 2 * (n - 1)
            assert distinct_pairs(sequence_multiplicities(s)) <= 3 * n * n / 8


class TestShard:
    def test_identity(self):
        d = Domain(DomainKind.GRAPHICAL, 6)
        assert shard(d, 1) == [d]

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            shard(Domain(DomainKind.TREE, 5), 0)

    def test_more_shards_than_items(self):
        parts = shard(Domain(DomainKind.TREE, 4), 8)
        assert len(parts) == 8
        streams = [list(enumerate_domain(p)) for p in parts]
        assert any(not s for s in streams)
        assert sorted(itertools.chain(*streams), reverse=True) == [(3, 1, 1, 1), (2, 2, 1, 1)]

    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("n", [4, 6, 8])
    @pytest.mark.parametrize("count", [2, 3, 4, 7, 50])
    def test_partition(self, kind, n, count):
        d = Domain(kind, n)
        full = list(enumerate_domain(d))
        parts = shard(d, count)
        assert len(parts) == count
        streams = [list(enumerate_domain(p)) for p in parts]
        merged = list(itertools.chain(*streams))
        assert len(merged) == len(set(merged))
        assert sorted(merged, reverse=True) == full
        assert sum(domain_size(p) for p in parts) == len(full)
        assert sum(candidate_count(p) for p in parts) == candidate_count(d)

    def test_nested_sharding(self):
        d = Domain(DomainKind.INTEGER, 7)
        full = set(enumerate_domain(d))
        pieces = [q for p in shard(d, 3) for q in shard(p, 4)]
        merged = [s for q in pieces for s in enumerate_domain(q)]
        assert len(merged) == len(full) and set(merged) == full
