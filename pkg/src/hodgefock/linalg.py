"""Exact sparse linear algebra over the rationals.

A vector is a dict mapping a totally ordered key (an int, or a tuple of
ints) to a nonzero coefficient; absent keys are zero.  Coefficients are
ints or fractions.Fraction, never floats, so every rank, kernel and
echelon form below is exact.
"""

from __future__ import annotations

from fractions import Fraction


def subtract_scaled(vec: dict, row: dict, c) -> None:
    """In place: vec -= c * row, dropping entries that cancel to zero."""
    for key, val in row.items():
        cur = vec.get(key, 0) - c * val
        if cur:
            vec[key] = cur
        else:
            vec.pop(key, None)


def eliminate(vec: dict, rows: dict) -> dict:
    """Reduce a copy of vec against rows (a dict pivot -> pivot-normalized row).

    Rows must be in echelon form: each row's pivot is its smallest key.
    A single pass in increasing pivot order then suffices, because
    eliminating pivot p only introduces keys larger than p.
    """
    out = dict(vec)
    for p in sorted(rows):
        c = out.get(p)
        if c:
            subtract_scaled(out, rows[p], c)
    return out


class EchelonBasis:
    """A reduced-echelon family of sparse vectors with pivots normalized to 1.

    The stored rows are a canonical basis of the span: two spans are equal
    iff the row dicts are equal, which the tests rely on.
    """

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: dict = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def pivots(self) -> list:
        return sorted(self.rows)

    def sorted_rows(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]

    def reduce(self, vec: dict) -> dict:
        return eliminate(vec, self.rows)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: dict) -> bool:
        """Add vec to the span.  Returns True iff the dimension grew."""
        res = self.reduce(vec)
        if not res:
            return False
        p = min(res)
        inv = Fraction(1) / res[p]
        new = {k: v * inv for k, v in res.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                subtract_scaled(row, new, c)
        self.rows[p] = new
        return True

    def coordinates(self, vec: dict) -> list | None:
        """Coefficients of vec in the stored row basis, or None if outside.

        Because rows are fully reduced, the coefficient on the row with
        pivot p is just vec[p].
        """
        coords = []
        res = dict(vec)
        for p in sorted(self.rows):
            c = res.get(p, 0)
            coords.append(c)
            if c:
                subtract_scaled(res, self.rows[p], c)
        if res:
            return None
        return coords


def matrix_rank(columns: list[dict]) -> int:
    """Rank of the matrix whose columns are the given sparse vectors."""
    rows: dict = {}
    rank = 0
    for col in columns:
        vec = dict(col)
        for p in sorted(rows):
            c = vec.get(p)
            if c:
                subtract_scaled(vec, rows[p], c)
        if vec:
            p = min(vec)
            inv = Fraction(1) / vec[p]
            rows[p] = {k: v * inv for k, v in vec.items()}
            rank += 1
    return rank


def kernel_basis(columns: list[dict]) -> list[dict]:
    """Basis of {x : sum_j x_j * columns[j] = 0}.

    Each kernel element is a dict column-index -> coefficient.  Built
    incrementally: a column that reduces to zero yields the combination
    that killed it.
    """
    rows: dict = {}
    kernel: list[dict] = []
    for j, col in enumerate(columns):
        vec = dict(col)
        tag = {j: Fraction(1)}
        for p in sorted(rows):
            c = vec.get(p)
            if c:
                rvec, rtag = rows[p]
                subtract_scaled(vec, rvec, c)
                subtract_scaled(tag, rtag, c)
        if not vec:
            kernel.append(tag)
        else:
            p = min(vec)
            inv = Fraction(1) / vec[p]
            rows[p] = (
                {k: v * inv for k, v in vec.items()},
                {k: v * inv for k, v in tag.items()},
            )
    return kernel
