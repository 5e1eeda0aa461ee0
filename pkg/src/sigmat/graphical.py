"""Graphicality tests and a brute-force realization oracle for small n."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from .core import DegreeSequence, canonical

ORACLE_MAX_N = 8


@dataclass(frozen=True)
class SmallGraph:
    """Simple undirected graph on vertices ``0 .. n-1``."""

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SmallGraph":
        edges = list(edges)
        keyed = {(min(u, v), max(u, v)) for u, v in edges}
        if len(keyed) != len(edges):
            raise ValueError("parallel edges")
        return cls(n, frozenset(keyed))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


def irr(graph: SmallGraph) -> int:
    """Albertson irregularity: sum of edge imbalances."""
    deg = graph.degrees()
    return sum(abs(deg[u] - deg[v]) for u, v in graph.edges)


def sigma(graph: SmallGraph) -> int:
    """Sigma-irregularity: sum of squared edge imbalances."""
    deg = graph.degrees()
    return sum((deg[u] - deg[v]) ** 2 for u, v in graph.edges)


# ---------------------------------------------------------------------------
# Sequence predicates
# ---------------------------------------------------------------------------


def _check_range(seq: DegreeSequence) -> None:
    n = len(seq)
    for d in seq:
        if d < 0 or d > n - 1:
            raise ValueError(f"degree {d} outside [0, {n - 1}] for n={n}")


def is_graphical(seq: Iterable[int]) -> bool:
    """Erdos-Gallai test, every ``k`` in ``1 .. n-1`` checked."""
    d = canonical(seq)
    _check_range(d)
    n = len(d)
    if sum(d) % 2:
        return False
    lhs = 0
    for k in range(1, n):
        lhs += d[k - 1]
        rhs = k * (k - 1) + sum(min(k, x) for x in d[k:])
        if lhs > rhs:
            return False
    return True


def is_tree_sequence(seq: Iterable[int]) -> bool:
    d = canonical(seq)
    n = len(d)
    return n >= 2 and d[-1] >= 1 and sum(d) == 2 * n - 2


def has_connected_realization(seq: Iterable[int]) -> bool:
    d = canonical(seq)
    n = len(d)
    if n == 1:
        return d[0] == 0
    return d[-1] >= 1 and sum(d) >= 2 * (n - 1) and is_graphical(d)


def batch_is_graphical(arr: np.ndarray) -> np.ndarray:
    """Erdos-Gallai over the rows of a non-increasing ``(B, n)`` array."""
    arr = np.asarray(arr, dtype=np.int64)
    n = arr.shape[1]
    ok = arr.sum(axis=1) % 2 == 0
    cums = np.cumsum(arr, axis=1)
    for k in range(1, n):
        rhs = k * (k - 1) + np.minimum(arr[:, k:], k).sum(axis=1)
        ok &= cums[:, k - 1] <= rhs
    return ok


def batch_has_connected_realization(arr: np.ndarray) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.int64)
    n = arr.shape[1]
    if n == 1:
        return arr[:, 0] == 0
    return (arr[:, -1] >= 1) & (arr.sum(axis=1) >= 2 * (n - 1)) & batch_is_graphical(arr)


# ---------------------------------------------------------------------------
# Realization oracle
# ---------------------------------------------------------------------------


def realizations(
    seq: Iterable[int],
    connected_only: bool = False,
    max_n: int = ORACLE_MAX_N,
) -> Iterator[SmallGraph]:
    """Yield every labeled simple graph in which vertex ``i`` has degree ``seq[i]``.

    The sequence is canonicalized first, so vertex 0 carries the largest
    degree.  Exhaustive backtracking: each vertex in turn picks its
    remaining neighbours among later vertices that still have capacity.
    """
    d = canonical(seq)
    n = len(d)
    if n > max_n:
        raise ValueError(f"realization oracle is bounded to n <= {max_n}, got n={n}")
    if any(x < 0 or x > n - 1 for x in d) or sum(d) % 2:
        return
    need = list(d)
    edges: list[tuple[int, int]] = []

    def extend(v: int) -> Iterator[SmallGraph]:
        if v == n:
            g = SmallGraph(n, frozenset(edges))
            if not connected_only or g.is_connected():
                yield g
            return
        later = [w for w in range(v + 1, n) if need[w] > 0]
        k = need[v]
        if k > len(later):
            return
        for chosen in combinations(later, k):
            for w in chosen:
                need[w] -= 1
                edges.append((v, w))
            need[v] = 0
            yield from extend(v + 1)
            need[v] = k
            for w in chosen:
                need[w] += 1
                edges.pop()

    yield from extend(0)


def antiregular_sequence(n: int, connected: bool = True) -> DegreeSequence:
    """Degree multiset of an antiregular graph on ``n`` vertices.

    The connected graph has degrees ``1 .. n-1`` with ``n // 2`` twice;
    the disconnected one is its complement.
    """
    if n <= 3:
        raise ValueError(f"antiregular sequences are built for n >= 4, got n={n}")
    values = list(range(1, n)) + [n // 2]
    if not connected:
        values = [n - 1 - v for v in values]
    return canonical(values)
