"""Exhaustive census of diagrams: primitive counts, histograms, formula checks.

The engine enumerates every m x n diagram, classifies it exactly (Pfaffian
and nullity of the skew adjacency matrix), and aggregates counts. Work is
partitioned by the first row's black mask into independent sub-enumerations
whose records merge by plain addition, so results are identical for any
worker count and schedule.

Closed formulas live in a small registry keyed by formula id, and the
check_* helpers turn the known identities and conjectures into executable
reports. Conjectured formulas are only ever reported as "no counterexample
found"; nothing here claims a proof.
"""

from __future__ import annotations

import multiprocessing
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from . import backend
from .criterion import primitive_1xn, primitive_2xn_fast, two_row_stats
from .diagram import (
    CauchonDiagram,
    _iter_row_masks,
    _row_candidates,
    canonical_labels,
    format_grid,
)
from .matching import pfaffian_by_matchings, vert_partition_sum

__all__ = [
    "MODE_PFAFFIAN",
    "MODE_FAST",
    "CensusRecord",
    "run_census",
    "FORMULA_IDS",
    "UnknownFormulaError",
    "formula_value",
    "FormulaCheckRow",
    "check_formula",
    "RelationRow",
    "check_relation_eqc",
    "PowerOfTwoViolation",
    "PowerOfTwoReport",
    "scan_power_of_two",
    "CriterionRow",
    "check_criterion_2xn",
    "check_primitive_1xn",
    "LemmaRow",
    "check_lemma_decomposition",
    "proportion",
    "fit_power_sum_coefficients",
    "power_sum_value",
    "conjectured_leading_coefficient",
]

MODE_PFAFFIAN = "pfaffian"
MODE_FAST = "fast-when-available"

_MODE_ALIASES = {
    "pfaffian": MODE_PFAFFIAN,
    "fast": MODE_FAST,
    "fast-when-available": MODE_FAST,
}


@dataclass(frozen=True)
class CensusRecord:
    """Aggregate counts for one grid shape.

    ``nullity_histogram`` maps nullity to diagram count in pfaffian mode
    (histogram[0] equals the primitive count) and is None in fast mode.
    ``elapsed`` is wall time in seconds and is excluded from data payloads.
    """

    m: int
    n: int
    mode: str
    total: int
    primitive: int
    nullity_histogram: dict[int, int] | None
    elapsed: float = field(default=0.0, compare=False)

    def proportion(self) -> Fraction:
        return Fraction(self.primitive, self.total)

    def to_payload(self) -> dict:
        """Deterministic JSON-ready dict (no timing information)."""
        hist = None
        if self.nullity_histogram is not None:
            hist = {str(k): self.nullity_histogram[k] for k in sorted(self.nullity_histogram)}
        prop = self.proportion()
        return {
            "m": self.m,
            "n": self.n,
            "mode": self.mode,
            "total": self.total,
            "primitive": self.primitive,
            "proportion_num": prop.numerator,
            "proportion_den": prop.denominator,
            "nullity_histogram": hist,
        }


@lru_cache(maxsize=200_000)
def _white_cols(n: int, mask: int) -> tuple[int, ...]:
    return tuple(c for c in range(1, n + 1) if not mask >> (c - 1) & 1)


def _census_partition(args: tuple[int, int, int, str]) -> tuple[int, int, tuple[tuple[int, int], ...] | None]:
    """Classify every diagram with the given first row; returns (total, primitive, histogram items)."""
    m, n, first_row, mode = args
    total = 0
    primitive = 0
    if mode == MODE_FAST:
        if m == 1:
            for masks in _iter_row_masks(m, n, first_row=first_row):
                total += 1
                if (n - masks[0].bit_count()) % 2 == 0:
                    primitive += 1
        elif m == 2:
            for masks in _iter_row_masks(m, n, first_row=first_row):
                total += 1
                if primitive_2xn_fast(CauchonDiagram(2, n, masks)):
                    primitive += 1
        else:
            # no closed form is known for three or more rows
            for masks in _iter_row_masks(m, n, first_row=first_row):
                total += 1
                if _classify_masks(masks, n)[0]:
                    primitive += 1
        return total, primitive, None
    hist: dict[int, int] = {}
    for masks in _iter_row_masks(m, n, first_row=first_row):
        pf, nul = _classify_masks(masks, n)
        total += 1
        if pf:
            primitive += 1
        hist[nul] = hist.get(nul, 0) + 1
    return total, primitive, tuple(sorted(hist.items()))


def _classify_masks(masks: Sequence[int], n: int) -> tuple[int, int]:
    rows: list[int] = []
    cols: list[int] = []
    for i, mask in enumerate(masks, start=1):
        for c in _white_cols(n, mask):
            rows.append(i)
            cols.append(c)
    return backend.classify_cells(rows, cols)


def run_census(
    m: int,
    n: int,
    mode: str = MODE_PFAFFIAN,
    workers: int | None = None,
) -> CensusRecord:
    """Enumerate and classify all of C_{m,n}.

    ``mode`` is "pfaffian" (full nullity histogram) or "fast-when-available"
    (closed-form tests for one and two rows, histogram omitted). Results do
    not depend on ``workers``; the default uses all cores.
    """
    if m < 1 or n < 0:
        raise ValueError(f"grid shape {m}x{n} is not valid")
    try:
        mode = _MODE_ALIASES[mode]
    except KeyError:
        raise ValueError(f"unknown census mode {mode!r}") from None
    if workers is None or workers <= 0:
        workers = os.cpu_count() or 1
    start = time.perf_counter()
    first_rows = _row_candidates(n, (1 << n) - 1)
    tasks = [(m, n, fr, mode) for fr in first_rows]
    if workers == 1 or len(tasks) <= 1 or m * n <= 16:
        parts = [_census_partition(task) for task in tasks]
    else:
        chunk = max(1, len(tasks) // (workers * 8))
        with multiprocessing.Pool(workers) as pool:
            parts = pool.map(_census_partition, tasks, chunksize=chunk)
    total = 0
    primitive = 0
    hist: dict[int, int] | None = None if mode == MODE_FAST else {}
    for part_total, part_primitive, part_hist in parts:
        total += part_total
        primitive += part_primitive
        if hist is not None and part_hist is not None:
            for key, count in part_hist:
                hist[key] = hist.get(key, 0) + count
    if hist is not None:
        hist = dict(sorted(hist.items()))
    return CensusRecord(
        m=m,
        n=n,
        mode=mode,
        total=total,
        primitive=primitive,
        nullity_histogram=hist,
        elapsed=time.perf_counter() - start,
    )


# --- closed formulas ---------------------------------------------------------

P1_CLOSED = "P1_closed"
P2_CLOSED = "P2_closed"
C2_TOTAL = "C2_total"
C2_PRIME_TOTAL = "C2_prime_total"
P3_CONJECTURED = "P3_conjectured"
PROPORTION_LIMIT = "proportion_limit"

FORMULA_IDS = (
    P1_CLOSED,
    P2_CLOSED,
    C2_TOTAL,
    C2_PRIME_TOTAL,
    P3_CONJECTURED,
    PROPORTION_LIMIT,
)

#: ids whose value is conjectural: checks report agreement, never proof
CONJECTURED_FORMULA_IDS = (P3_CONJECTURED,)


class UnknownFormulaError(ValueError):
    """Formula id outside the registry."""


def formula_value(formula_id: str, n: int | None = None, m: int | None = None) -> Fraction:
    """Exact value of a registered closed form.

    Sequence formulas take ``n`` (>= 1); the limiting proportion takes the
    row count ``m``.
    """
    if formula_id == PROPORTION_LIMIT:
        if m is None or m < 1:
            raise ValueError("proportion_limit needs a row count m >= 1")
        return Fraction(comb(2 * m, m), 4**m)
    if n is None or n < 1:
        raise ValueError(f"{formula_id} needs a column count n >= 1")
    if formula_id == P1_CLOSED:
        # even white subsets of a single row
        return Fraction(2 ** (n - 1))
    if formula_id == P2_CLOSED:
        return Fraction(3 ** (n + 1) - 2 ** (n + 1) + (-1) ** (n + 1) + 2, 4)
    if formula_id == C2_TOTAL:
        return Fraction(2 * 3**n - 2**n)
    if formula_id == C2_PRIME_TOTAL:
        return Fraction(2 ** (n + 1) - 1)
    if formula_id == P3_CONJECTURED:
        return Fraction(
            15 * 4**n - 18 * 3**n + 13 * 2**n - 6 * (-1) ** n + 3 * (-2) ** n, 8
        )
    raise UnknownFormulaError(f"unknown formula id {formula_id!r}")


def _count_no_black_column_by_enumeration(m: int, n: int) -> int:
    count = 0
    for masks in _iter_row_masks(m, n):
        acc = (1 << n) - 1
        for mask in masks:
            acc &= mask
        if acc == 0:
            count += 1
    return count


@dataclass(frozen=True)
class FormulaCheckRow:
    n: int
    expected: Fraction
    actual: int
    match: bool


_FORMULA_ROWS = {P1_CLOSED: 1, P2_CLOSED: 2, P3_CONJECTURED: 3}


def check_formula(
    formula_id: str,
    ns: Iterable[int],
    mode: str = MODE_PFAFFIAN,
    workers: int | None = None,
) -> list[FormulaCheckRow]:
    """Compare a sequence formula against censused values, one row per n.

    Matches are exact integer equality. For conjectured formulas agreement
    means only "no counterexample in the tested range".
    """
    rows = []
    for n in ns:
        expected = formula_value(formula_id, n=n)
        if formula_id in _FORMULA_ROWS:
            actual = run_census(_FORMULA_ROWS[formula_id], n, mode=mode, workers=workers).primitive
        elif formula_id == C2_TOTAL:
            actual = run_census(2, n, mode=mode, workers=workers).total
        elif formula_id == C2_PRIME_TOTAL:
            actual = _count_no_black_column_by_enumeration(2, n)
        elif formula_id == PROPORTION_LIMIT:
            raise ValueError("proportion_limit is a limit; it has no per-n census value")
        else:
            raise UnknownFormulaError(f"unknown formula id {formula_id!r}")
        rows.append(FormulaCheckRow(n, expected, actual, expected == actual))
    return rows


@dataclass(frozen=True)
class RelationRow:
    n: int
    total: int
    binomial_sum: int
    match: bool


def check_relation_eqc(m: int, max_n: int) -> list[RelationRow]:
    """Verify |C_{m,n}| = sum_i C(n,i) * |C'_{m,n-i}|, both sides enumerated."""
    if m < 1 or max_n < 0:
        raise ValueError(f"invalid range m={m}, max_n={max_n}")
    no_black = [_count_no_black_column_by_enumeration(m, k) for k in range(max_n + 1)]
    rows = []
    for n in range(max_n + 1):
        lhs = sum(1 for _ in _iter_row_masks(m, n))
        rhs = sum(comb(n, i) * no_black[n - i] for i in range(n + 1))
        rows.append(RelationRow(n, lhs, rhs, lhs == rhs))
    return rows


@dataclass(frozen=True)
class PowerOfTwoViolation:
    m: int
    n: int
    grid: str
    pfaffian: int


@dataclass(frozen=True)
class PowerOfTwoReport:
    checked: int
    violations: tuple[PowerOfTwoViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _is_zero_or_power_of_two(value: int) -> bool:
    v = abs(value)
    return v == 0 or (v & (v - 1)) == 0


def scan_power_of_two(max_m: int, max_n: int) -> PowerOfTwoReport:
    """Scan |Pf| over all shapes up to max_m x max_n for non-powers of two.

    An empty violation list supports (but does not prove) the conjecture
    that the Pfaffian of a diagram is always 0 or +-2^k.
    """
    checked = 0
    violations = []
    for m in range(1, max_m + 1):
        for n in range(1, max_n + 1):
            for masks in _iter_row_masks(m, n):
                pf, _ = _classify_masks(masks, n)
                checked += 1
                if not _is_zero_or_power_of_two(pf):
                    violations.append(
                        PowerOfTwoViolation(
                            m, n, format_grid(CauchonDiagram(m, n, masks)), pf
                        )
                    )
    return PowerOfTwoReport(checked, tuple(violations))


@dataclass(frozen=True)
class CriterionRow:
    n: int
    diagrams: int
    mismatches: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def check_criterion_2xn(max_n: int) -> list[CriterionRow]:
    """Fast two-row test versus the Pfaffian test, exhaustively per n."""
    rows = []
    for n in range(1, max_n + 1):
        mismatches = []
        count = 0
        for masks in _iter_row_masks(2, n):
            count += 1
            fast = primitive_2xn_fast(CauchonDiagram(2, n, masks))
            exact = _classify_masks(masks, n)[0] != 0
            if fast != exact:
                mismatches.append(format_grid(CauchonDiagram(2, n, masks)))
        rows.append(CriterionRow(n, count, tuple(mismatches)))
    return rows


def check_primitive_1xn(max_n: int) -> list[CriterionRow]:
    """Even-white-count test versus the Pfaffian test for single rows."""
    rows = []
    for n in range(1, max_n + 1):
        mismatches = []
        count = 0
        for masks in _iter_row_masks(1, n):
            count += 1
            fast = primitive_1xn(CauchonDiagram(1, n, masks))
            exact = _classify_masks(masks, n)[0] != 0
            if fast != exact:
                mismatches.append(format_grid(CauchonDiagram(1, n, masks)))
        rows.append(CriterionRow(n, count, tuple(mismatches)))
    return rows


@dataclass(frozen=True)
class LemmaRow:
    n: int
    diagrams: int
    subsets: int
    mismatches: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _vert_closed_form(t_size: int, label_sum: int, m: int, m_prime: int) -> int:
    if m % 2 == m_prime % 2 == t_size % 2:
        return -1 if (comb(t_size + 1, 2) + label_sum) % 2 else 1
    return 0


def check_lemma_decomposition(max_n: int) -> list[LemmaRow]:
    """Check the vertical-edge decomposition of two-row Pfaffians.

    For every two-row diagram without black columns and every subset T of
    its fully white columns, the brute-force signed sum over matchings whose
    vertical edges sit exactly in T must equal the closed form
    (-1)^(C(|T|+1,2) + sum(T)) gated by the parity condition, and the sums
    over all T must add up to the Pfaffian.
    """
    rows = []
    for n in range(1, max_n + 1):
        mismatches = []
        diagrams = 0
        subsets = 0
        for masks in _iter_row_masks(2, n):
            acc = masks[0] & masks[1]
            if acc:
                continue
            diagram = CauchonDiagram(2, n, masks)
            diagrams += 1
            labeled = canonical_labels(diagram)
            stats = two_row_stats(diagram)
            vert = sorted(stats.vert_set)
            total = 0
            for bits in range(1 << len(vert)):
                subset = [vert[i] for i in range(len(vert)) if bits >> i & 1]
                subsets += 1
                brute = vert_partition_sum(labeled, subset)
                label_sum = sum(
                    label
                    for (row, col), label in zip(labeled.cells, labeled.labels)
                    if col in subset
                )
                closed = _vert_closed_form(len(subset), label_sum, stats.m, stats.m_prime)
                if brute != closed:
                    mismatches.append(
                        f"{format_grid(diagram)} T={subset} brute={brute} closed={closed}"
                    )
                total += brute
            if total != pfaffian_by_matchings(labeled):
                mismatches.append(f"{format_grid(diagram)} vertical sums do not add to Pf")
        rows.append(LemmaRow(n, diagrams, subsets, tuple(mismatches)))
    return rows


def proportion(
    m: int, n: int, mode: str = MODE_PFAFFIAN, workers: int | None = None
) -> Fraction:
    """P(m,n) / |C_{m,n}| as an exact (reduced) rational."""
    record = run_census(m, n, mode=mode, workers=workers)
    return record.proportion()


# --- exploratory power-sum fit ------------------------------------------------
#
# Reporting aid for the conjectured shape P(m, n) = sum_j c_j * j**n. The
# exponent bases run over 1-m .. m+1 without 0 (base 0 contributes nothing
# for n >= 1); the proven two-row formula and the conjectured three-row one
# both need the negative bases down to -(m-1). Nothing here is a proof: the
# fit interpolates censused values and cross-checks the leftover points.


def fit_power_sum_coefficients(
    m: int, values: Mapping[int, int]
) -> dict[int, Fraction]:
    """Interpolate c_j with P(m,n) = sum c_j * j**n from censused values.

    ``values`` maps n to P(m,n) and must contain at least 2m + 1 points;
    extra points are used as cross-checks and raise ValueError when the
    interpolant misses them.
    """
    bases = [j for j in range(1 - m, m + 2) if j != 0]
    ns = sorted(values)
    if len(ns) < len(bases):
        raise ValueError(f"need at least {len(bases)} data points, got {len(ns)}")
    solve_ns = ns[: len(bases)]
    size = len(bases)
    matrix = [
        [Fraction(base**n) for base in bases] + [Fraction(values[n])]
        for n in solve_ns
    ]
    for col in range(size):
        pivot = next((r for r in range(col, size) if matrix[r][col] != 0), None)
        if pivot is None:
            raise ValueError("interpolation system is singular")
        matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
        pv = matrix[col][col]
        for r in range(size):
            if r != col and matrix[r][col] != 0:
                f = matrix[r][col] / pv
                for c in range(col, size + 1):
                    matrix[r][c] -= f * matrix[col][c]
    coeffs = {base: matrix[i][size] / matrix[i][i] for i, base in enumerate(bases)}
    for n in ns[len(bases):]:
        if power_sum_value(coeffs, n) != values[n]:
            raise ValueError(f"power-sum fit fails cross-check at n={n}")
    return coeffs


def power_sum_value(coeffs: Mapping[int, Fraction], n: int) -> Fraction:
    return sum((c * base**n for base, c in coeffs.items()), start=Fraction(0))


def conjectured_leading_coefficient(m: int) -> Fraction:
    """(2m-1)!! / 2^m, the conjectured coefficient of (m+1)^n."""
    num = 1
    for odd in range(1, 2 * m, 2):
        num *= odd
    return Fraction(num, 2**m)
