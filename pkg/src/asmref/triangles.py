"""Alternating sign matrices, monotone triangles, and refined counting tables.

The workhorse is alpha_count, the number of triangular arrays over a prescribed
weakly increasing bottom row in which every row is weakly increasing, every row
above a strictly increasing row is strictly increasing, and consecutive rows
interlace.  All refined ASM counts reduce to it: deleting d columns from the
staircase row (1, ..., n) counts the order-n matrices whose last d rows are
unit rows with their 1s in those columns, read upward in increasing order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .config import DEFAULT_BUDGET, Budget
from .errors import BudgetError, ValidationError


@dataclass(frozen=True)
class Asm:
    """A validated alternating sign matrix (rows as tuples over {-1, 0, 1})."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n == 0:
            raise ValidationError("matrix must be nonempty")
        if any(len(row) != n for row in self.entries):
            raise ValidationError("matrix must be square")
        for axis, lines in (("row", self.entries), ("column", zip(*self.entries))):
            for pos, line in enumerate(lines, 1):
                partial = 0
                for value in line:
                    if value not in (-1, 0, 1):
                        raise ValidationError(f"entries must be -1, 0 or 1, got {value}")
                    partial += value
                    if partial not in (0, 1):
                        raise ValidationError(
                            f"{axis} {pos}: partial sums must stay in {{0, 1}}"
                        )
                if partial != 1:
                    raise ValidationError(f"{axis} {pos}: entries must sum to 1")

    @property
    def n(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class MonotoneTriangle:
    """A monotone triangle; rows top first, so row i (1-based) has i entries."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows:
            raise ValidationError("triangle must be nonempty")
        for i, row in enumerate(self.rows, 1):
            if len(row) != i:
                raise ValidationError(f"row {i} must have {i} entries, got {len(row)}")
            if any(a >= b for a, b in zip(row, row[1:])):
                raise ValidationError(f"row {i} must be strictly increasing: {row}")
        for upper, lower in zip(self.rows, self.rows[1:]):
            for j, value in enumerate(upper):
                if not lower[j] <= value <= lower[j + 1]:
                    raise ValidationError(
                        f"rows {upper} over {lower} violate the interlacing condition"
                    )

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def bottom_row(self) -> tuple[int, ...]:
        return self.rows[-1]

    @property
    def is_complete(self) -> bool:
        return self.bottom_row == tuple(range(1, self.n + 1))


def asm_to_mt(a: Asm) -> MonotoneTriangle:
    """Map an ASM to the triangle of its partial column-sum 1-positions."""
    n = a.n
    sums = [0] * n
    rows = []
    for i in range(n):
        for j in range(n):
            sums[j] += a.entries[i][j]
        rows.append(tuple(j + 1 for j in range(n) if sums[j] == 1))
    return MonotoneTriangle(tuple(rows))


def mt_to_asm(t: MonotoneTriangle) -> Asm:
    """Inverse of asm_to_mt; the triangle must be complete (bottom row 1..n)."""
    if not t.is_complete:
        raise ValidationError(
            f"triangle is not complete: bottom row {t.bottom_row} is not 1..{t.n}"
        )
    n = t.n
    prev = [0] * n
    entries = []
    for row in t.rows:
        cur = [0] * n
        for v in row:
            cur[v - 1] = 1
        entries.append(tuple(cur[j] - prev[j] for j in range(n)))
        prev = cur
    return Asm(tuple(entries))


# Counting rows are translation invariant, so memo keys are normalized to start
# at zero; this lets every table, polynomial grid and identity check share one
# cache.
_alpha_memo: dict[tuple[int, ...], int] = {}


def alpha_count(bottom: Sequence[int]) -> int:
    """Number of almost-monotone triangles over a weakly increasing bottom row.

    For a strictly increasing bottom row this counts ordinary monotone
    triangles.  Ties are allowed; rows above a tie are only required to be
    weakly increasing, which keeps the recurrence well defined.
    """
    row = tuple(int(v) for v in bottom)
    if not row:
        return 1
    if any(a > b for a, b in zip(row, row[1:])):
        raise ValidationError(f"bottom row must be weakly increasing: {row}")
    first = row[0]
    return _alpha(tuple(v - first for v in row))


def _alpha(row: tuple[int, ...]) -> int:
    if len(row) == 1:
        return 1
    cached = _alpha_memo.get(row)
    if cached is not None:
        return cached
    m = len(row)
    buf = [0] * (m - 1)

    # depth-first accumulation over interlacing predecessor rows; kept free of
    # generator overhead because this loop dominates every table build
    def descend(pos: int, lo: int) -> int:
        if pos == m - 1:
            first = buf[0]
            return _alpha(tuple(v - first for v in buf))
        total = 0
        start = row[pos] if row[pos] > lo else lo
        for v in range(start, row[pos + 1] + 1):
            buf[pos] = v
            total += descend(pos + 1, v + 1)
        return total

    result = descend(0, row[0])
    _alpha_memo[row] = result
    return result


def _interlacing_rows(row: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All strictly increasing rows interlacing the given row from above."""
    m = len(row)
    buf = [0] * (m - 1)

    def rec(pos: int, lo: int) -> Iterator[tuple[int, ...]]:
        if pos == m - 1:
            yield tuple(buf)
            return
        start = row[pos] if row[pos] > lo else lo
        for v in range(start, row[pos + 1] + 1):
            buf[pos] = v
            yield from rec(pos + 1, v + 1)

    yield from rec(0, row[0])


def complete_monotone_triangles(
    n: int, budget: Budget = DEFAULT_BUDGET
) -> list[MonotoneTriangle]:
    """All monotone triangles of order n with bottom row 1..n."""
    if n < 1:
        raise ValidationError(f"order must be positive, got {n}")
    if n > budget.enumeration_max_n:
        raise BudgetError(
            f"enumeration at n={n} exceeds the budget cap {budget.enumeration_max_n}"
        )
    out: list[MonotoneTriangle] = []
    stack: list[tuple[int, ...]] = [tuple(range(1, n + 1))]

    def extend_upward():
        top = stack[-1]
        if len(top) == 1:
            out.append(MonotoneTriangle(tuple(reversed(stack))))
            return
        for nxt in _interlacing_rows(top):
            stack.append(nxt)
            extend_upward()
            stack.pop()

    extend_upward()
    return out


def enumerate_asms(n: int, budget: Budget = DEFAULT_BUDGET) -> list[Asm]:
    """All ASMs of order n, sorted lexicographically by row-major entries."""
    asms = [mt_to_asm(t) for t in complete_monotone_triangles(n, budget)]
    asms.sort(key=lambda a: a.entries)
    return asms


def refined_count(n: int, indices: Sequence[int]) -> int:
    """Count order-n ASMs refined by the 1-columns of their leading rows.

    With d = len(indices), this is the number of order-n ASMs whose first d
    rows place their fresh 1s in the given columns; it equals the number of
    monotone triangles of order n - d over the complement of the indices in
    1..n, and is 1 by convention when d = n.
    """
    idx = tuple(int(i) for i in indices)
    if n < 1:
        raise ValidationError(f"order must be positive, got {n}")
    if not idx:
        raise ValidationError("at least one index is required")
    if idx[0] < 1 or idx[-1] > n or any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValidationError(f"indices must be strictly increasing in 1..{n}: {idx}")
    if len(idx) == n:
        return 1
    keep = set(idx)
    return alpha_count(tuple(v for v in range(1, n + 1) if v not in keep))


@dataclass(frozen=True)
class RefinedTable:
    """All d-fold refined counts of order n, keyed by index tuples."""

    n: int
    d: int
    entries: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        if not 1 <= self.d <= self.n:
            raise ValidationError(f"depth must lie in 1..{self.n}, got {self.d}")
        expected = math.comb(self.n, self.d)
        if len(self.entries) != expected:
            raise ValidationError(
                f"table must have {expected} entries, got {len(self.entries)}"
            )
        for key, value in self.entries.items():
            if len(key) != self.d:
                raise ValidationError(f"index tuple {key} does not have depth {self.d}")
            if value < 0:
                raise ValidationError(f"count at {key} is negative: {value}")

    def value(self, *indices: int) -> int:
        key = indices[0] if len(indices) == 1 and isinstance(indices[0], tuple) else indices
        try:
            return self.entries[tuple(key)]
        except KeyError:
            raise ValidationError(f"no entry at {key}") from None


def build_table(n: int, d: int, budget: Budget = DEFAULT_BUDGET) -> RefinedTable:
    """Build the complete d-fold refined table of order n."""
    if n < 1:
        raise ValidationError(f"order must be positive, got {n}")
    if not 1 <= d <= n:
        raise ValidationError(f"depth must lie in 1..{n}, got {d}")
    cap = budget.table_max_n.get(d)
    if cap is None:
        raise BudgetError(f"no table budget is configured for depth d={d}")
    if n > cap:
        raise BudgetError(f"table at n={n}, d={d} exceeds the budget cap {cap}")
    entries = {
        combo: refined_count(n, combo)
        for combo in itertools.combinations(range(1, n + 1), d)
    }
    return RefinedTable(n, d, entries)


def clear_caches() -> None:
    """Drop the shared counting memo (mainly for cache-behaviour tests)."""
    _alpha_memo.clear()
