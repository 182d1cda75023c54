"""Laminated sections of the minimal-vector set.

The n-dimensional section M_n is the subset of the full set satisfying a
cumulative chain of linear coordinate conditions, one added per dimension
step from 23 down to 1.  The expected totals and per-shape counts for all
24 sections are frozen in EXPECTED_SECTION_COUNTS and serve as the
correctness oracle for both the conditions and the Golay coordinate
arrangement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .leech import Shape, VectorSet


class InvalidDimension(Exception):
    pass


@dataclass(frozen=True)
class Condition:
    """One linear coordinate condition: x_i = x_j, x_i = 0, or
    x_i + x_j + x_k = 0 (1-based coordinates)."""

    kind: str                 # "eq" | "zero" | "sum3"
    coords: tuple[int, ...]

    def mask(self, vectors: np.ndarray) -> np.ndarray:
        c = self.coords
        if self.kind == "eq":
            return vectors[:, c[0] - 1] == vectors[:, c[1] - 1]
        if self.kind == "zero":
            return vectors[:, c[0] - 1] == 0
        s = vectors[:, c[0] - 1].astype(np.int32)
        s += vectors[:, c[1] - 1]
        s += vectors[:, c[2] - 1]
        return s == 0

    def __str__(self) -> str:
        c = self.coords
        if self.kind == "eq":
            return f"x{c[0]} = x{c[1]}"
        if self.kind == "zero":
            return f"x{c[0]} = 0"
        return f"x{c[0]} + x{c[1]} + x{c[2]} = 0"


def _eq(i, j):
    return Condition("eq", (i, j))


def _zero(i):
    return Condition("zero", (i,))


def _sum3(i, j, k):
    return Condition("sum3", (i, j, k))


#: Condition added when stepping down to dimension n (cumulative: the
#: section at dimension n satisfies the conditions added at 23, 22, .., n).
ADDED_CONDITION: dict[int, Condition] = {
    23: _eq(24, 23), 22: _eq(23, 22), 21: _zero(22), 20: _zero(21),
    19: _zero(20), 18: _sum3(19, 18, 17), 17: _zero(19), 16: _zero(18),
    15: _zero(16), 14: _sum3(15, 14, 13), 13: _zero(15), 12: _zero(14),
    11: _eq(12, 11), 10: _eq(11, 10), 9: _zero(10), 8: _zero(9),
    7: _eq(8, 7), 6: _eq(7, 6), 5: _zero(6), 4: _zero(5),
    3: _zero(4), 2: _sum3(3, 2, 1), 1: _zero(3),
}

#: n -> (total, FOUR_FOUR, TWO_EIGHT, THREE_ONE)
EXPECTED_SECTION_COUNTS: dict[int, tuple[int, int, int, int]] = {
    24: (196560, 1104, 97152, 98304),
    23: (93150, 926, 47168, 45056),
    22: (49896, 840, 27552, 21504),
    21: (27720, 840, 26880, 0),
    20: (17400, 760, 16640, 0),
    19: (10668, 684, 9984, 0),
    18: (7398, 486, 6912, 0),
    17: (5346, 482, 4864, 0),
    16: (4320, 480, 3840, 0),
    15: (2340, 420, 1920, 0),
    14: (1422, 270, 1152, 0),
    13: (906, 266, 640, 0),
    12: (648, 264, 384, 0),
    11: (438, 182, 256, 0),
    10: (336, 144, 192, 0),
    9: (272, 144, 128, 0),
    8: (240, 112, 128, 0),
    7: (126, 62, 64, 0),
    6: (72, 40, 32, 0),
    5: (40, 40, 0, 0),
    4: (24, 24, 0, 0),
    3: (12, 12, 0, 0),
    2: (6, 6, 0, 0),
    1: (2, 2, 0, 0),
}

#: Lattice names of selected sections, for display only.
SECTION_NAMES = {16: "BW16", 8: "E8", 7: "E7", 6: "E6", 5: "D5",
                 4: "D4", 3: "D3", 2: "A2", 1: "A1",
                 13: "L13max", 12: "L12max", 11: "L11max"}


def conditions_for(n: int) -> list[Condition]:
    """All cumulative conditions active at dimension n (empty for n = 24)."""
    if not 1 <= n <= 24:
        raise InvalidDimension(f"dimension must be in 1..24, got {n}")
    return [ADDED_CONDITION[m] for m in range(23, n - 1, -1)]


@dataclass(frozen=True)
class SectionCounts:
    n: int
    total: int
    by_shape: dict[Shape, int]

    @property
    def matches_expected(self) -> bool:
        exp = EXPECTED_SECTION_COUNTS[self.n]
        return (self.total, self.by_shape[Shape.FOUR_FOUR],
                self.by_shape[Shape.TWO_EIGHT],
                self.by_shape[Shape.THREE_ONE]) == exp


def section(M: VectorSet, n: int) -> VectorSet:
    """The dimension-n section of the full minimal-vector set, in canonical
    order inherited from M."""
    if not 1 <= n <= 24:
        raise InvalidDimension(f"dimension must be in 1..24, got {n}")
    mask = np.ones(len(M), dtype=bool)
    for cond in conditions_for(n):
        mask &= cond.mask(M.vectors)
    ids = np.flatnonzero(mask)
    return M.subset(ids, label=f"M{n}", dimension=n)


def section_counts(S: VectorSet) -> SectionCounts:
    return SectionCounts(n=S.dimension, total=len(S), by_shape=S.counts_by_shape)


def rank_of_span(S: VectorSet) -> int:
    """Exact rank of the integer matrix whose rows are the vectors of S.

    Computed as the rank of the 24x24 Gram matrix A^T A (equal to rank(A)
    over the rationals) by fraction-free Bareiss elimination on exact
    integers.  The Gram entries are bounded by |S| * 16 so the float64
    accumulation below is exact.
    """
    A = S.vectors.astype(np.float64)
    gram = (A.T @ A).astype(np.int64)
    m = [[int(v) for v in row] for row in gram.tolist()]
    n = 24
    rank = 0
    prev_pivot = 1
    for col in range(n):
        pivot_row = next((r for r in range(rank, n) if m[r][col] != 0), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for r in range(rank + 1, n):
            factor = m[r][col]
            for c in range(col, n):
                m[r][c] = (m[r][c] * pivot - factor * m[rank][c]) // prev_pivot
        prev_pivot = pivot
        rank += 1
    return rank


def reproduce_table(M: VectorSet) -> list[dict]:
    """Recompute every section and compare to the frozen table.

    Returns one row dict per dimension with got/expected counts and a
    per-cell pass flag; used by the `counts --all` command and the
    acceptance suite.
    """
    rows = []
    for n in range(24, 0, -1):
        S = section(M, n)
        counts = section_counts(S)
        exp = EXPECTED_SECTION_COUNTS[n]
        got = (counts.total, counts.by_shape[Shape.FOUR_FOUR],
               counts.by_shape[Shape.TWO_EIGHT], counts.by_shape[Shape.THREE_ONE])
        rows.append({
            "n": n,
            "name": SECTION_NAMES.get(n, ""),
            "condition": str(ADDED_CONDITION[n]) if n < 24 else "",
            "got": got,
            "expected": exp,
            "cells_ok": tuple(g == e for g, e in zip(got, exp)),
            "ok": got == exp,
        })
    return rows
