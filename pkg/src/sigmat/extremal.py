"""Exhaustive extremum searches and the theorem verification harness.

:func:`search_extremum` scans a whole domain (optionally split into
shards handled by a process pool) and reports every optimizer under the
tie policy together with the margin to the best non-optimal value.
:func:`verify` binds each statement about extremal sequences to a domain,
an exponent and a predicted optimizer set, and turns searches into
per-``n`` verdicts.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .core import (
    TIE_TOLERANCE,
    DegreeSequence,
    ExponentKind,
    ExponentSpec,
    batch_profiles,
    batch_sigma_t_f,
    canonical,
    difference_profile,
    is_tie,
    sigma_t_f,
)
from .enumeration import Domain, DomainKind, candidate_count, iter_batches, shard
from .graphical import antiregular_sequence

DEFAULT_BUDGET = 10**8
DEFAULT_CONSTANTS = (0.1, 0.25, 0.5, 0.75, 0.9)
THRESHOLD_NUDGE = 1e-3


class DomainTooLarge(RuntimeError):
    def __init__(self, domain: Domain, size: int, budget: int):
        super().__init__(
            f"{domain.kind.value} domain at n={domain.n} has {size} candidates, "
            f"over the budget of {budget} (set SIGMA_BUDGET to override)"
        )
        self.domain = domain
        self.domain_size = size
        self.budget = budget


def current_budget() -> int:
    raw = os.environ.get("SIGMA_BUDGET")
    return DEFAULT_BUDGET if not raw else int(float(raw))


class Verdict(str, Enum):
    CONFIRMED = "Confirmed"
    REFUTED = "Refuted"
    TIE_DETECTED = "TieDetected"
    EXPLORED = "Explored"


@dataclass
class ExtremalReport:
    domain: Domain
    exponent: str
    f: float
    direction: str
    optimum: float
    optimizers: list[DegreeSequence]
    runner_up: float | None
    runner_up_margin: float | None
    sequences_scanned: int
    wall_time: float = 0.0
    verdict: Verdict | None = None
    theorem: str | None = None
    label: str = ""
    expected: list[DegreeSequence] | None = None
    excluded: list[DegreeSequence] = field(default_factory=list)
    exploratory: bool = False
    tie_tolerance: float = TIE_TOLERANCE
    version: str = __version__

    @property
    def n(self) -> int:
        return self.domain.n

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "label": self.label,
            "n": self.n,
            "domain": self.domain.to_dict(),
            "exponent": self.exponent,
            "f": self.f,
            "direction": self.direction,
            "optimum": self.optimum,
            "optimizers": [list(s) for s in self.optimizers],
            "runner_up": self.runner_up,
            "runner_up_margin": self.runner_up_margin,
            "verdict": None if self.verdict is None else self.verdict.value,
            "expected": None if self.expected is None else [list(s) for s in self.expected],
            "excluded": [list(s) for s in self.excluded],
            "exploratory": self.exploratory,
            "sequences_scanned": self.sequences_scanned,
            "tie_tolerance": self.tie_tolerance,
            "wall_time": self.wall_time,
            "version": self.version,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExtremalReport":
        expected = data.get("expected")
        verdict = data.get("verdict")
        return cls(
            domain=Domain.from_dict(data["domain"]),
            exponent=data["exponent"],
            f=data["f"],
            direction=data["direction"],
            optimum=data["optimum"],
            optimizers=[tuple(s) for s in data["optimizers"]],
            runner_up=data.get("runner_up"),
            runner_up_margin=data.get("runner_up_margin"),
            sequences_scanned=data["sequences_scanned"],
            wall_time=data.get("wall_time", 0.0),
            verdict=None if verdict is None else Verdict(verdict),
            theorem=data.get("theorem"),
            label=data.get("label", ""),
            expected=None if expected is None else [tuple(s) for s in expected],
            excluded=[tuple(s) for s in data.get("excluded", [])],
            exploratory=data.get("exploratory", False),
            tie_tolerance=data.get("tie_tolerance", TIE_TOLERANCE),
            version=data.get("version", __version__),
        )

    def same_result(self, other: "ExtremalReport") -> bool:
        """Equality ignoring wall time."""
        a, b = self.to_dict(), other.to_dict()
        a.pop("wall_time")
        b.pop("wall_time")
        return a == b


# ---------------------------------------------------------------------------
# Search engine
# ---------------------------------------------------------------------------


@dataclass
class _Partial:
    """Order-independent summary of a scanned slice.

    ``elite`` keeps every entry whose key is within a band below the best
    key seen; ``below`` is the best key among everything dropped.  The
    band is wider than the tie tolerance, so merging partials in any order
    gives the same final optimizer set and runner-up.
    """

    best: float | None = None
    elite: list[tuple[float, DegreeSequence]] = field(default_factory=list)
    below: float | None = None
    scanned: int = 0


def _band(best, exact: bool, tol: float) -> float:
    return 0 if exact else 4 * tol * max(1.0, abs(best))


def _max_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _prune(part: _Partial, exact: bool, tol: float) -> _Partial:
    if part.best is None:
        return part
    cut = part.best - _band(part.best, exact, tol)
    keep, below = [], part.below
    for key, seq in part.elite:
        if key >= cut:
            keep.append((key, seq))
        else:
            below = _max_opt(below, key)
    return _Partial(part.best, keep, below, part.scanned)


def _merge(a: _Partial, b: _Partial, exact: bool, tol: float) -> _Partial:
    merged = _Partial(
        _max_opt(a.best, b.best),
        a.elite + b.elite,
        _max_opt(a.below, b.below),
        a.scanned + b.scanned,
    )
    return _prune(merged, exact, tol)


def _scan(domain: Domain, f: float, sign: int, exclude: tuple, tol: float) -> _Partial:
    exact = f == 1 or f == 2
    part = _Partial()
    excl = np.array(exclude, dtype=np.int64).reshape(len(exclude), domain.n) if exclude else None
    for arr in iter_batches(domain):
        if excl is not None:
            hit = (arr[:, None, :] == excl[None, :, :]).all(axis=2).any(axis=1)
            arr = arr[~hit]
            if not len(arr):
                continue
        part.scanned += len(arr)
        keys = batch_sigma_t_f(batch_profiles(arr), f) * sign
        best = _max_opt(part.best, keys.max().item())
        cut = best - _band(best, exact, tol)
        top = keys >= cut
        rest = keys[~top]
        if len(rest):
            part.below = _max_opt(part.below, rest.max().item())
        new = [(k, tuple(row)) for k, row in zip(keys[top].tolist(), arr[top].tolist())]
        part = _prune(_Partial(best, part.elite + new, part.below, part.scanned), exact, tol)
    return part


def _scan_args(args):
    return _scan(*args)


def search_extremum(
    domain: Domain,
    f: float,
    direction: str = "max",
    *,
    shards: int = 1,
    jobs: int = 1,
    exclude: Iterable[Sequence[int]] = (),
    tol: float = TIE_TOLERANCE,
    budget: int | None = None,
    exponent_label: str | None = None,
) -> ExtremalReport:
    """Scan ``domain`` for the maximum (or minimum) of the index at exponent ``f``.

    Raises :class:`DomainTooLarge` before scanning anything when the raw
    candidate count exceeds the budget.
    """
    if not f > 0:
        raise ValueError(f"exponent must be positive, got {f!r}")
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
    budget = current_budget() if budget is None else budget
    size = candidate_count(domain)
    if size > budget:
        raise DomainTooLarge(domain, size, budget)

    start = time.perf_counter()
    sign = 1 if direction == "max" else -1
    excluded = sorted({canonical(s) for s in exclude}, reverse=True)
    exact = f == 1 or f == 2
    work = [(d, f, sign, tuple(excluded), tol) for d in shard(domain, shards)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            partials = list(pool.map(_scan_args, work))
    else:
        partials = [_scan_args(w) for w in work]
    total = reduce(lambda a, b: _merge(a, b, exact, tol), partials, _Partial())
    if total.best is None:
        raise ValueError(f"domain {domain.to_dict()} is empty")

    opt_value = sign * total.best
    optimizers, runner = [], total.below
    for key, seq in total.elite:
        if is_tie(sign * key, opt_value, tol):
            optimizers.append(seq)
        else:
            runner = _max_opt(runner, key)
    optimizers = sorted(set(optimizers), reverse=True)
    runner_value = None if runner is None else sign * runner
    margin = None if runner is None else total.best - runner
    return ExtremalReport(
        domain=domain,
        exponent=exponent_label or repr(f),
        f=f,
        direction=direction,
        optimum=opt_value,
        optimizers=optimizers,
        runner_up=runner_value,
        runner_up_margin=margin,
        sequences_scanned=total.scanned,
        wall_time=time.perf_counter() - start,
        excluded=excluded,
        tie_tolerance=tol,
    )


# ---------------------------------------------------------------------------
# Predicted optimizer sets
# ---------------------------------------------------------------------------


def path_sequence(n: int) -> DegreeSequence:
    return canonical([1, 1] + [2] * (n - 2))


def star_sequence(n: int) -> DegreeSequence:
    return canonical([n - 1] + [1] * (n - 1))


def y_sequence(n: int) -> DegreeSequence:
    """Claw with one edge subdivided ``n - 4`` times."""
    return canonical([3] + [2] * (n - 4) + [1, 1, 1])


def covering_sequences(n: int) -> set[DegreeSequence]:
    """Length-``n`` multisets over ``[1, n-1]`` that use every value."""
    return {canonical(list(range(1, n)) + [r]) for r in range(1, n)}


def multiplicities_to_sequence(a: Sequence[int]) -> DegreeSequence:
    """``(a1, a2, a3, a4)`` -> the sequence ``(1^a1, 2^a2, 3^a3, 4^a4)``."""
    return canonical([deg for deg, m in zip(range(1, len(a) + 1), a) for _ in range(m)])


def sequence_multiplicities(seq: Sequence[int], top: int = 4) -> tuple[int, ...]:
    return tuple(sum(1 for d in seq if d == deg) for deg in range(1, top + 1))


def chemical_maximizers(n: int) -> set[DegreeSequence]:
    """Balanced chemical degree sequences predicted to maximize the index."""
    k, r = divmod(n, 4)
    if r == 3:
        k += 1
        cases = [(k, k - 1, k, k)]
    elif r == 0:
        cases = [(k, k, k, k)]
    elif r == 1:
        cases = [(k, k, k, k + 1)]
    else:
        cases = [(k, k + 1, k, k + 1), (k + 1, k, k + 1, k)]
    return {multiplicities_to_sequence(a) for a in cases}


def antiregular_set(domain: Domain) -> set[DegreeSequence]:
    out = set()
    for connected in (True, False):
        seq = antiregular_sequence(domain.n, connected)
        if domain.lo <= seq[-1] and seq[0] <= domain.hi:
            out.add(seq)
    return out


# ---------------------------------------------------------------------------
# Verification harness
# ---------------------------------------------------------------------------


class TheoremId(str, Enum):
    ANTIREGULAR_GRAPH_MAX = "antiregular-max"
    SEQUENCE_COROLLARY = "seq-corollary"
    SEQUENCE_STRONG = "seq-strong"
    TREE_MIN = "tree-min"
    TREE_SECOND_MIN = "tree-second-min"
    CHEM_MAX = "chem-max"
    PROBLEM1 = "problem1"
    PROBLEM2 = "problem2"
    TREE_MAX_PROBLEM = "tree-max"
    CHEM_CONJECTURES = "chem-conjectures"


MIN_N = {TheoremId.CHEM_MAX: 7, TheoremId.CHEM_CONJECTURES: 7}


@dataclass(frozen=True)
class Expectation:
    """Predicted optimizer set.

    With ``exact`` the optimizer set must equal ``allowed``; otherwise it
    must be a subset of ``allowed`` that contains ``required``.
    """

    allowed: frozenset[DegreeSequence]
    required: frozenset[DegreeSequence] = frozenset()
    exact: bool = True

    def holds(self, optimizers: Iterable[DegreeSequence]) -> bool:
        found = set(optimizers)
        if self.exact:
            return found == self.allowed
        return bool(found) and found <= self.allowed and self.required <= found


@dataclass(frozen=True)
class Case:
    label: str
    domain: Domain
    exponent: ExponentSpec
    direction: str
    expectation: Expectation | None
    exclude: tuple[DegreeSequence, ...] = ()
    exploratory: bool = False


def judge(optimizers: Sequence[DegreeSequence], expectation: Expectation | None) -> Verdict:
    if expectation is None:
        return Verdict.EXPLORED
    if not expectation.holds(optimizers):
        return Verdict.REFUTED
    profiles = {difference_profile(s).counts for s in optimizers}
    return Verdict.TIE_DETECTED if len(profiles) > 1 else Verdict.CONFIRMED


def theorem_cases(
    theorem: TheoremId,
    n: int,
    *,
    constants: Sequence[float] = DEFAULT_CONSTANTS,
    min_degree_one: bool = False,
    graphical_only: bool = False,
    exponent: ExponentSpec | None = None,
) -> list[Case]:
    """The searches that check ``theorem`` at a single ``n``."""
    theorem = TheoremId(theorem)
    if n < MIN_N.get(theorem, 4):
        raise ValueError(f"{theorem.value} is checked for n >= {MIN_N.get(theorem, 4)}, got n={n}")
    K = ExponentKind
    graphs = Domain(DomainKind.GRAPHICAL, n, lo=1 if min_degree_one else 0)
    ints = Domain(DomainKind.INTEGER, n)
    trees = Domain(DomainKind.TREE, n)
    chem = Domain(DomainKind.CHEMICAL, n, graphical_only=graphical_only)
    anti = Expectation(frozenset(antiregular_set(graphs)))
    chem_best = Expectation(frozenset(chemical_maximizers(n)))
    P, S = path_sequence(n), star_sequence(n)

    if theorem in (TheoremId.ANTIREGULAR_GRAPH_MAX, TheoremId.SEQUENCE_COROLLARY):
        domain = graphs if theorem is TheoremId.ANTIREGULAR_GRAPH_MAX else ints
        expect = anti if domain is graphs else Expectation(frozenset(covering_sequences(n)), exact=False)
        return [
            Case("threshold", domain, ExponentSpec(K.BINOMIAL_THRESHOLD), "max", expect),
            Case("interior", domain, ExponentSpec(K.BINOMIAL_THRESHOLD, scale=0.5), "max", expect),
        ]
    if theorem is TheoremId.SEQUENCE_STRONG:
        allowed = covering_sequences(n)
        required: set[DegreeSequence] = set()
        if n == 4:
            allowed.add((3, 3, 1, 1))
            required.add((3, 3, 1, 1))
        expect = Expectation(frozenset(allowed), frozenset(required), exact=False)
        return [Case("threshold", ints, ExponentSpec(K.SEQUENCE_THRESHOLD), "max", expect)]
    if theorem is TheoremId.TREE_MIN:
        only_p, only_s = Expectation(frozenset({P})), Expectation(frozenset({S}))
        return [
            Case("above", trees, ExponentSpec(K.TREE_THRESHOLD, scale=1 + THRESHOLD_NUDGE), "min", only_p),
            Case("at", trees, ExponentSpec(K.TREE_THRESHOLD), "min", Expectation(frozenset({P, S}))),
            Case("below", trees, ExponentSpec(K.TREE_THRESHOLD, scale=1 - THRESHOLD_NUDGE), "min", only_s),
            Case("f=1", trees, ExponentSpec(K.EXPLICIT, 1.0), "min", only_p, exploratory=True),
            Case("f=2", trees, ExponentSpec(K.EXPLICIT, 2.0), "min", only_p, exploratory=True),
        ]
    if theorem is TheoremId.TREE_SECOND_MIN:
        return [
            Case(
                "below-without-star",
                trees,
                ExponentSpec(K.TREE_THRESHOLD, scale=1 - THRESHOLD_NUDGE),
                "min",
                Expectation(frozenset({P})),
                exclude=(S,),
            )
        ]
    if theorem is TheoremId.CHEM_MAX:
        return [Case("threshold", chem, ExponentSpec(K.CHEMICAL_THRESHOLD), "max", chem_best)]
    if theorem is TheoremId.PROBLEM1:
        return [Case("1/n", graphs, ExponentSpec(K.RECIPROCAL), "max", anti)]
    if theorem is TheoremId.PROBLEM2:
        return [
            Case(f"c={c!r}", graphs, ExponentSpec(K.CONSTANT, c), "max", anti)
            for c in constants
        ]
    if theorem is TheoremId.TREE_MAX_PROBLEM:
        spec = exponent or ExponentSpec(K.RECIPROCAL)
        return [Case(spec.label(), trees, spec, "max", None)]
    if theorem is TheoremId.CHEM_CONJECTURES:
        cases = [Case("1/n", chem, ExponentSpec(K.RECIPROCAL), "max", chem_best)]
        cases += [Case(f"c={c!r}", chem, ExponentSpec(K.CONSTANT, c), "max", chem_best) for c in constants]
        return cases
    raise ValueError(f"unknown theorem {theorem!r}")


def run_case(case: Case, *, theorem: TheoremId | None = None, shards: int = 1, jobs: int = 1,
             budget: int | None = None) -> ExtremalReport:
    f = case.exponent.resolve(case.domain.n)
    report = search_extremum(
        case.domain,
        f,
        case.direction,
        shards=shards,
        jobs=jobs,
        exclude=case.exclude,
        budget=budget,
        exponent_label=case.exponent.label(),
    )
    report.theorem = None if theorem is None else TheoremId(theorem).value
    report.label = case.label
    report.exploratory = case.exploratory
    if case.expectation is not None:
        report.expected = sorted(case.expectation.allowed, reverse=True)
    report.verdict = judge(report.optimizers, case.expectation)
    return report


def verify(
    theorem: TheoremId | str,
    n_values: Iterable[int],
    *,
    shards: int = 1,
    jobs: int = 1,
    budget: int | None = None,
    **options,
) -> list[ExtremalReport]:
    """Run every case of ``theorem`` for each ``n``; one report per case.

    ``options`` go to :func:`theorem_cases` (``constants``,
    ``min_degree_one``, ``graphical_only``, ``exponent``).
    """
    theorem = TheoremId(theorem)
    n_values = list(n_values)
    cases = [c for n in n_values for c in theorem_cases(theorem, n, **options)]
    # refuse up front rather than part-way through a sweep
    budget = current_budget() if budget is None else budget
    for c in cases:
        size = candidate_count(c.domain)
        if size > budget:
            raise DomainTooLarge(c.domain, size, budget)
    return [run_case(c, theorem=theorem, shards=shards, jobs=jobs, budget=budget) for c in cases]


# ---------------------------------------------------------------------------
# Closed-form checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class YCheck:
    n: int
    f: float
    y_value: float
    y_closed_form: float
    relative_error: float
    star_value: float
    y_below_star: bool


def y_closed_form(n: int, f: float) -> float:
    return (4 * n - 16) + 3 * 2.0**f


def y_graph_check(n_values: Iterable[int], f: ExponentSpec | None = None) -> list[YCheck]:
    """Compare ``Y_n`` against its closed form and against the star.

    ``f`` defaults to ``1/n``.
    """
    spec = f or ExponentSpec(ExponentKind.RECIPROCAL)
    out = []
    for n in n_values:
        if n < 5:
            raise ValueError(f"Y_n is distinct from the star only for n >= 5, got n={n}")
        fn = spec.resolve(n)
        y = sigma_t_f(difference_profile(y_sequence(n)), fn)
        closed = y_closed_form(n, fn)
        star = sigma_t_f(difference_profile(star_sequence(n)), fn)
        out.append(YCheck(n, fn, y, closed, abs(y - closed) / max(1.0, abs(closed)), star, y < star))
    return out


@dataclass(frozen=True)
class ChemRelaxation:
    n: int
    x1: float
    x2: float
    x3: float
    x4: float
    gap_to_quarter: float
    objective: float


def relaxation_objective(x: Sequence[float], n: int) -> float:
    """Pair-weighted objective of the real relaxation at ``f = 1/n``."""
    x1, x2, x3, x4 = x
    w2, w3 = 2.0 ** (1 / n), 3.0 ** (1 / n)
    return (x1 * x2 + x2 * x3 + x3 * x4) + (x1 * x3 + x2 * x4) * w2 + x1 * x4 * w3


def chem_relaxation(n: int) -> ChemRelaxation:
    """Closed-form real optimum for the ``n = 0 (mod 4)`` chemical case."""
    if n < 4 or n % 4:
        raise ValueError(f"relaxation is stated for n >= 4 with n = 0 (mod 4), got n={n}")
    # a = 2^(1/n) - 1, b = 3^(1/n) - 1, kept small without cancellation
    a = math.expm1(math.log(2) / n)
    b = math.expm1(math.log(3) / n)
    denom = 2 + 2 * a - b
    gap = n * b / (4 * denom)
    x1 = n / 4 + gap
    x2 = n / 2 - x1
    x = (x1, x2, x2, x1)
    return ChemRelaxation(n, x1, x2, x2, x1, gap, relaxation_objective(x, n))


def distinct_pairs(a: Sequence[int]) -> int:
    """Pairs of vertices with distinct degree, from degree multiplicities."""
    n = sum(a)
    return n * (n - 1) // 2 - sum(m * (m - 1) // 2 for m in a)


def distinct_pair_exchange_check(a: Sequence[int], i: int, j: int) -> int:
    """Gain in distinct-degree pairs from moving one vertex from class ``i`` to ``j``.

    ``i`` and ``j`` are 1-based degree classes.  The gain is recomputed
    from scratch and checked against ``a_i - a_j - 1``.
    """
    a = list(a)
    if not (1 <= i <= len(a) and 1 <= j <= len(a)) or i == j:
        raise ValueError(f"bad class indices i={i}, j={j}")
    ai, aj = a[i - 1], a[j - 1]
    if ai - aj < 2:
        raise ValueError(f"exchange needs a_i - a_j >= 2, got {ai} - {aj}")
    b = list(a)
    b[i - 1] -= 1
    b[j - 1] += 1
    gain = distinct_pairs(b) - distinct_pairs(a)
    if gain != ai - aj - 1 or gain <= 0:
        raise RuntimeError(f"exchange gain {gain} disagrees with a_i - a_j - 1 = {ai - aj - 1}")
    return gain
