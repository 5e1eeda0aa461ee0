"""Degree-sequence indices and exponent thresholds.

Every index here is a function of the multiset of degrees only, so the
work is done on a :class:`DifferenceProfile`: the number of unordered
position pairs whose values differ by each ``delta``.  The generalized
index is then ``sum(counts[delta] * delta**f)``.

Edge-based indices (``irr`` and ``sigma``) need an actual graph and live
next to :class:`~sigmat.graphical.SmallGraph`.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

TIE_TOLERANCE = 1e-9

DegreeSequence = tuple[int, ...]


def canonical(seq: Iterable[int]) -> DegreeSequence:
    """Return ``seq`` as a non-increasing tuple of ints."""
    out = tuple(sorted((int(v) for v in seq), reverse=True))
    if not out:
        raise ValueError("sequence must be non-empty")
    return out


# ---------------------------------------------------------------------------
# Difference profile
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DifferenceProfile:
    """Pair counts by value difference.

    ``counts[d]`` is the number of unordered position pairs ``{i, j}`` with
    ``|a_i - a_j| == d``.  The array is at least ``n - 1`` long (so that
    every graph degree difference ``0 .. n-2`` has a slot) and longer when
    the value spread of the source sequence demands it.
    """

    counts: tuple[int, ...]
    n: int

    @property
    def pairs(self) -> int:
        return sum(self.counts)

    @property
    def distinct_pairs(self) -> int:
        """Pairs whose values differ."""
        return self.pairs - self.counts[0]


def difference_profile(seq: Iterable[int]) -> DifferenceProfile:
    values = canonical(seq)
    n = len(values)
    mult = Counter(values)
    spread = values[0] - values[-1]
    counts = [0] * max(n - 1, spread + 1, 1)
    counts[0] = sum(m * (m - 1) // 2 for m in mult.values())
    distinct = sorted(mult)
    for i, a in enumerate(distinct):
        for b in distinct[i + 1:]:
            counts[b - a] += mult[a] * mult[b]
    return DifferenceProfile(tuple(counts), n)


# ---------------------------------------------------------------------------
# Indices
# ---------------------------------------------------------------------------


def _is_exact_exponent(f: float) -> bool:
    return f == 1 or f == 2


def power_table(f: float, size: int) -> list[float]:
    """``[0, 1, 2**f, ..., (size-1)**f]`` evaluated as ``exp(f * ln d)``."""
    if f <= 0:
        raise ValueError(f"exponent must be positive, got {f!r}")
    table = [0.0] * size
    for d in range(1, size):
        table[d] = math.exp(f * math.log(d))
    return table


def sigma_t_f(profile: DifferenceProfile, f: float) -> float | int:
    """Generalized total sigma-irregularity ``sum_{pairs} |a - b|**f``.

    ``f == 1`` and ``f == 2`` are computed in exact integer arithmetic and
    return an ``int``.
    """
    if f <= 0:
        raise ValueError(f"exponent must be positive, got {f!r}")
    counts = profile.counts
    if _is_exact_exponent(f):
        p = int(f)
        return sum(c * d**p for d, c in enumerate(counts))
    table = power_table(f, len(counts))
    total = 0.0
    # ascending delta order; batch evaluation uses the same order
    for d in range(1, len(counts)):
        total += counts[d] * table[d]
    return total


def sigma_t_naive(seq: Sequence[int], f: float) -> float:
    """Pairwise double loop; reference for :func:`sigma_t_f`."""
    total = 0.0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            d = abs(seq[i] - seq[j])
            if d:
                total += d**f
    return total


def sigma_t_classic(seq: Iterable[int]) -> int:
    """Total sigma-irregularity (squared differences over all pairs)."""
    return sigma_t_f(difference_profile(seq), 2)


def irr_t(seq: Iterable[int]) -> int:
    """Total irregularity (absolute differences over all pairs)."""
    return sigma_t_f(difference_profile(seq), 1)


def first_zagreb(seq: Iterable[int]) -> int:
    return sum(int(d) * int(d) for d in seq)


def batch_profiles(arr: np.ndarray) -> np.ndarray:
    """Difference profiles for every row of an ``(B, n)`` integer array.

    Returns a ``(B, spread + 1)`` int64 array where ``spread`` is the
    largest value minus the smallest over the whole batch.
    """
    arr = np.asarray(arr, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] == 0:
        return np.zeros((arr.shape[0] if arr.ndim == 2 else 0, 1), dtype=np.int64)
    lo, hi = int(arr.min()), int(arr.max())
    width = hi - lo + 1
    mult = np.stack([(arr == v).sum(axis=1) for v in range(lo, hi + 1)], axis=1)
    counts = np.zeros((arr.shape[0], width), dtype=np.int64)
    counts[:, 0] = (mult * (mult - 1) // 2).sum(axis=1)
    for d in range(1, width):
        counts[:, d] = (mult[:, :-d] * mult[:, d:]).sum(axis=1)
    return counts


def batch_sigma_t_f(counts: np.ndarray, f: float) -> np.ndarray:
    """Row-wise :func:`sigma_t_f` over a batch of profile counts.

    Bitwise identical to the scalar routine: same table, same summation
    order.
    """
    width = counts.shape[1]
    if _is_exact_exponent(f):
        p = int(f)
        weights = np.arange(width, dtype=np.int64) ** p
        out = np.zeros(counts.shape[0], dtype=np.int64)
        for d in range(1, width):
            out += counts[:, d] * weights[d]
        return out
    table = power_table(f, width)
    out = np.zeros(counts.shape[0], dtype=np.float64)
    for d in range(1, width):
        out += counts[:, d] * table[d]
    return out


# ---------------------------------------------------------------------------
# Comparison policy
# ---------------------------------------------------------------------------


class Order(Enum):
    LESS = "less"
    TIE = "tie"
    GREATER = "greater"


def is_tie(a: float, b: float, tol: float = TIE_TOLERANCE) -> bool:
    if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
        return a == b
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def compare_values(a: float, b: float, tol: float = TIE_TOLERANCE) -> Order:
    """Three-way comparison with a relative tie tolerance.

    Two ints (exact exponent path) are compared exactly.
    """
    if is_tie(a, b, tol):
        return Order.TIE
    return Order.LESS if a < b else Order.GREATER


# ---------------------------------------------------------------------------
# Exponents
# ---------------------------------------------------------------------------


def _log_base(base: float, x: float) -> float:
    return math.log(x) / math.log(base)


def binomial_threshold(n: int) -> float:
    """Largest exponent for which antiregular graphs are the unique maximizers."""
    _need_n(n)
    return _log_base(n - 2, (n * n - n - 2) / (n * n - n - 4))


def sequence_threshold(n: int) -> float:
    _need_n(n)
    return _log_base(n - 2, (n - 1) / (n - 2))


def tree_threshold(n: int) -> float:
    """Exponent at which the path and the star tie as tree minimizers."""
    _need_n(n)
    return _log_base(n - 2, (2 * n - 4) / (n - 1))


def chemical_threshold(n: int) -> float:
    _need_n(n)
    return _log_base(3, 3 * n * n / (3 * n * n - 8))


def _need_n(n: int) -> None:
    # log base n-2 needs n-2 > 1
    if n < 4:
        raise ValueError(f"threshold exponents are defined for n >= 4, got n={n}")


class ExponentKind(str, Enum):
    BINOMIAL_THRESHOLD = "bin-threshold"
    SEQUENCE_THRESHOLD = "seq-threshold"
    TREE_THRESHOLD = "tree-threshold"
    CHEMICAL_THRESHOLD = "chem-threshold"
    RECIPROCAL = "1/n"
    CONSTANT = "constant"
    EXPLICIT = "explicit"


_THRESHOLDS = {
    ExponentKind.BINOMIAL_THRESHOLD: binomial_threshold,
    ExponentKind.SEQUENCE_THRESHOLD: sequence_threshold,
    ExponentKind.TREE_THRESHOLD: tree_threshold,
    ExponentKind.CHEMICAL_THRESHOLD: chemical_threshold,
}


@dataclass(frozen=True)
class ExponentSpec:
    """An exponent family ``f(n)``, optionally scaled.

    ``scale`` multiplies the resolved value; it is how the searches probe
    just above or below a threshold.
    """

    kind: ExponentKind
    value: float | None = None
    scale: float = 1.0

    def __post_init__(self):
        if self.kind is ExponentKind.CONSTANT:
            if self.value is None or not 0 < self.value < 1:
                raise ValueError(f"constant exponent must lie in (0, 1), got {self.value!r}")
        elif self.kind is ExponentKind.EXPLICIT:
            if self.value is None or not self.value > 0:
                raise ValueError(f"explicit exponent must be positive, got {self.value!r}")
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    def resolve(self, n: int) -> float:
        if self.kind in _THRESHOLDS:
            f = _THRESHOLDS[self.kind](n)
        elif self.kind is ExponentKind.RECIPROCAL:
            f = 1.0 / n
        else:
            f = float(self.value)
        return f * self.scale if self.scale != 1.0 else f

    def label(self) -> str:
        if self.kind in (ExponentKind.CONSTANT, ExponentKind.EXPLICIT):
            base = repr(float(self.value))
            if self.kind is ExponentKind.CONSTANT:
                base = f"c={base}"
        else:
            base = self.kind.value
        return base if self.scale == 1.0 else f"{self.scale!r}*{base}"

    @classmethod
    def parse(cls, text: str) -> "ExponentSpec":
        """Parse ``0.5``, ``1/n``, ``c=0.3``, ``bin-threshold``, ``0.999*tree-threshold`` ..."""
        raw = text.strip()
        scale = 1.0
        if "*" in raw:
            head, _, raw = raw.partition("*")
            scale = _parse_float(head, text)
        raw = raw.strip()
        for kind in ExponentKind:
            if raw == kind.value and kind not in (ExponentKind.CONSTANT, ExponentKind.EXPLICIT):
                return cls(kind, scale=scale)
        if raw.startswith("c="):
            return cls(ExponentKind.CONSTANT, _parse_float(raw[2:], text), scale)
        return cls(ExponentKind.EXPLICIT, _parse_float(raw, text), scale)


def _parse_float(token: str, context: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ValueError(f"bad exponent token {token.strip()!r} in {context!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"bad exponent token {token.strip()!r} in {context!r}")
    return value
