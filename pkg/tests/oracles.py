"""Brute-force references, independent of the package code paths."""

from __future__ import annotations

import itertools
from functools import lru_cache


def pairwise_counts(seq):
    counts = {}
    for a, b in itertools.combinations(seq, 2):
        counts[abs(a - b)] = counts.get(abs(a - b), 0) + 1
    return counts


def pairwise_power_sum(seq, f):
    return sum(abs(a - b) ** f for a, b in itertools.combinations(seq, 2) if a != b)


@lru_cache(maxsize=None)
def all_graphs(n):
    """Every labeled simple graph on n vertices as (degrees, edges, connected)."""
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for mask in range(1 << len(pairs)):
        edges = [p for k, p in enumerate(pairs) if mask >> k & 1]
        deg = [0] * n
        adj = [set() for _ in range(n)]
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
            adj[u].add(v)
            adj[v].add(u)
        seen, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append((tuple(sorted(deg, reverse=True)), tuple(edges), len(seen) == n))
    return tuple(out)


@lru_cache(maxsize=None)
def realizable_multisets(n, connected=False):
    return frozenset(d for d, _, c in all_graphs(n) if c or not connected)


def nonincreasing_tuples(n, lo, hi):
    return {tuple(sorted(t, reverse=True)) for t in itertools.product(range(lo, hi + 1), repeat=n)}
