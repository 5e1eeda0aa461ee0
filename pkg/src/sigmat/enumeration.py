"""Canonical enumeration of the search domains.

Every domain is a set of non-increasing integer tuples of length ``n``.
Streams are produced in lexicographically decreasing order.  A domain may
carry a list of fixed prefixes; only tuples starting with one of them are
produced.  That is how :func:`shard` partitions work across workers.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from itertools import combinations_with_replacement, islice
from math import comb
from typing import Iterator

import numpy as np

from .core import DegreeSequence
from .graphical import batch_has_connected_realization, batch_is_graphical

BATCH_SIZE = 1 << 16


class DomainKind(str, Enum):
    INTEGER = "int-seqs"
    GRAPHICAL = "graphical"
    TREE = "trees"
    CHEMICAL = "chemical"


@dataclass(frozen=True)
class Domain:
    """A search domain.

    ``lo`` / ``hi`` bound the values.  They default per kind: ``[1, n-1]``
    for integer sequences and trees, ``[0, n-1]`` for graphical sequences
    and ``[1, 4]`` for chemical sequences.  ``graphical_only`` relaxes the
    chemical domain from connected-realizable to merely graphical.
    """

    kind: DomainKind
    n: int
    lo: int | None = None
    hi: int | None = None
    graphical_only: bool = False
    prefixes: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        kind = DomainKind(self.kind)
        object.__setattr__(self, "kind", kind)
        n = self.n
        min_n = 2 if kind is DomainKind.TREE else 4
        if n < min_n:
            raise ValueError(f"{kind.value} domain needs n >= {min_n}, got n={n}")
        defaults = {
            DomainKind.INTEGER: (1, n - 1),
            DomainKind.GRAPHICAL: (0, n - 1),
            DomainKind.TREE: (1, n - 1),
            DomainKind.CHEMICAL: (1, min(4, n - 1)),
        }[kind]
        lo = defaults[0] if self.lo is None else self.lo
        hi = defaults[1] if self.hi is None else self.hi
        if kind is DomainKind.INTEGER and not 1 <= lo <= hi <= n - 1:
            raise ValueError(f"integer domain needs 1 <= lo <= hi <= n-1, got [{lo}, {hi}]")
        if kind is DomainKind.GRAPHICAL and not 0 <= lo <= hi <= n - 1:
            raise ValueError(f"graphical domain needs 0 <= lo <= hi <= n-1, got [{lo}, {hi}]")
        if kind in (DomainKind.TREE, DomainKind.CHEMICAL) and (lo, hi) != defaults:
            raise ValueError(f"{kind.value} domain has fixed bounds {defaults}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if self.prefixes is not None:
            prefixes = tuple(sorted({tuple(p) for p in self.prefixes}, reverse=True))
            for p in prefixes:
                if len(p) > n or any(a < b for a, b in zip(p, p[1:])):
                    raise ValueError(f"prefix {p} is not a non-increasing tuple of length <= {n}")
            object.__setattr__(self, "prefixes", prefixes)

    def to_dict(self) -> dict:
        out = {"kind": self.kind.value, "n": self.n, "lo": self.lo, "hi": self.hi}
        if self.graphical_only:
            out["graphical_only"] = True
        if self.prefixes is not None:
            out["prefixes"] = [list(p) for p in self.prefixes]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "Domain":
        prefixes = data.get("prefixes")
        return cls(
            DomainKind(data["kind"]),
            data["n"],
            data.get("lo"),
            data.get("hi"),
            data.get("graphical_only", False),
            None if prefixes is None else tuple(tuple(p) for p in prefixes),
        )

    def _roots(self) -> tuple[tuple[int, ...], ...]:
        return ((),) if self.prefixes is None else self.prefixes


# ---------------------------------------------------------------------------
# Raw candidate generation
# ---------------------------------------------------------------------------


def _tree_completions(prefix: tuple[int, ...], n: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing completions of ``prefix`` with values >= 1 summing to 2n-2."""
    out = list(prefix)
    target = 2 * n - 2

    def rec(remaining_len: int, remaining_sum: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining_len == 0:
            if remaining_sum == 0:
                yield tuple(out)
            return
        if not remaining_len <= remaining_sum <= cap * remaining_len:
            return
        top = min(cap, remaining_sum - (remaining_len - 1))
        bottom = -(-remaining_sum // remaining_len)
        for v in range(top, bottom - 1, -1):
            out.append(v)
            yield from rec(remaining_len - 1, remaining_sum - v, v)
            out.pop()

    if prefix and not all(1 <= v <= n - 1 for v in prefix):
        return
    cap = prefix[-1] if prefix else n - 1
    yield from rec(n - len(prefix), target - sum(prefix), cap)


def _raw_candidates(domain: Domain) -> Iterator[tuple[int, ...]]:
    n, lo, hi = domain.n, domain.lo, domain.hi
    for prefix in domain._roots():
        if domain.kind is DomainKind.TREE:
            yield from _tree_completions(prefix, n)
            continue
        if prefix and not all(lo <= v <= hi for v in prefix):
            continue
        top = prefix[-1] if prefix else hi
        rest = n - len(prefix)
        if rest == 0:
            yield prefix
            continue
        # values listed high to low: combinations come out lex-decreasing
        for tail in combinations_with_replacement(range(top, lo - 1, -1), rest):
            yield prefix + tail


def _filter(domain: Domain, arr: np.ndarray) -> np.ndarray:
    if domain.kind is DomainKind.GRAPHICAL:
        return arr[batch_is_graphical(arr)]
    if domain.kind is DomainKind.CHEMICAL:
        if domain.graphical_only:
            return arr[batch_is_graphical(arr)]
        return arr[batch_has_connected_realization(arr)]
    return arr


def iter_batches(domain: Domain, batch_size: int = BATCH_SIZE) -> Iterator[np.ndarray]:
    """Yield the domain as ``(B, n)`` int64 arrays, in stream order."""
    raw = _raw_candidates(domain)
    while True:
        chunk = list(islice(raw, batch_size))
        if not chunk:
            return
        arr = _filter(domain, np.array(chunk, dtype=np.int64).reshape(len(chunk), domain.n))
        if len(arr):
            yield arr


def enumerate_domain(domain: Domain) -> Iterator[DegreeSequence]:
    """Each sequence of the domain exactly once, lexicographically decreasing."""
    for arr in iter_batches(domain):
        for row in arr.tolist():
            yield tuple(row)


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _count_bounded_partitions(total: int, parts: int, cap: int) -> int:
    """Non-increasing tuples of ``parts`` values in ``[0, cap]`` summing to ``total``."""
    if parts == 0:
        return 1 if total == 0 else 0
    if total < 0 or total > parts * cap:
        return 0
    return sum(_count_bounded_partitions(total - v, parts - 1, v) for v in range(min(cap, total), -1, -1))


def candidate_count(domain: Domain) -> int:
    """Number of raw candidates scanned before any graphicality filter."""
    n, lo, hi = domain.n, domain.lo, domain.hi
    total = 0
    for prefix in domain._roots():
        if domain.kind is DomainKind.TREE:
            if prefix and not all(1 <= v <= n - 1 for v in prefix):
                continue
            rest = n - len(prefix)
            cap = (prefix[-1] if prefix else n - 1) - 1
            # subtract 1 from every free value: parts in [0, cap]
            total += _count_bounded_partitions(2 * n - 2 - sum(prefix) - rest, rest, cap)
            continue
        if prefix and not all(lo <= v <= hi for v in prefix):
            continue
        top = prefix[-1] if prefix else hi
        rest = n - len(prefix)
        total += comb(top - lo + rest, rest)
    return total


def domain_size(domain: Domain) -> int:
    """Exact number of sequences :func:`enumerate_domain` yields."""
    if domain.kind in (DomainKind.INTEGER, DomainKind.TREE):
        return candidate_count(domain)
    return sum(len(arr) for arr in iter_batches(domain))


# ---------------------------------------------------------------------------
# Sharding
# ---------------------------------------------------------------------------


def _extend(prefixes: list[tuple[int, ...]], domain: Domain) -> list[tuple[int, ...]]:
    out = []
    for p in prefixes:
        if len(p) == domain.n:
            out.append(p)
            continue
        top = p[-1] if p else domain.hi
        for v in range(top, domain.lo - 1, -1):
            out.append(p + (v,))
    return out


def shard(domain: Domain, shard_count: int) -> list[Domain]:
    """Split ``domain`` into ``shard_count`` disjoint sub-domains.

    Prefixes are deepened until there are at least ``shard_count`` of
    them (or they are full-length), then dealt round-robin.  Some shards
    may be empty when the domain is small.
    """
    if shard_count < 1:
        raise ValueError(f"shard_count must be >= 1, got {shard_count}")
    if shard_count == 1:
        return [domain]
    prefixes = list(domain._roots())
    while len(prefixes) < shard_count and any(len(p) < domain.n for p in prefixes):
        prefixes = _extend(prefixes, domain)
    prefixes.sort(reverse=True)
    groups: list[list[tuple[int, ...]]] = [[] for _ in range(shard_count)]
    for i, p in enumerate(prefixes):
        groups[i % shard_count].append(p)
    return [replace(domain, prefixes=tuple(g)) for g in groups]
