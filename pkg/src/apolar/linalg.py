"""Deterministic exact linear algebra over the rationals.

The forward pass is fraction-free (Bareiss) on denominator-cleared integer
rows, which keeps intermediate entries to minor-sized integers; the reduced
echelon form is then recovered with exact Fraction arithmetic.  Every routine
is deterministic: pivoting always picks the first usable row, and reduced
echelon bases are unique, so downstream golden tests can compare bases
verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

Vector = list  # list of Fraction


def _to_int_rows(rows: Sequence[Sequence]) -> list:
    """Scale each row by the lcm of denominators and divide out the content."""
    out = []
    for r in rows:
        fr = [Fraction(c) for c in r]
        if not any(fr):
            continue
        den = lcm(*(c.denominator for c in fr)) if fr else 1
        ints = [int(c * den) for c in fr]
        g = 0
        for c in ints:
            g = gcd(g, c)
        if g > 1:
            ints = [c // g for c in ints]
        out.append(ints)
    return out


def _bareiss_echelon(int_rows: list) -> tuple:
    """Fraction-free row echelon; returns (rows, pivot_columns)."""
    rows = [list(r) for r in int_rows]
    m = len(rows)
    if m == 0:
        return [], []
    n = len(rows[0])
    pivots = []
    prev = 1
    r = 0
    for col in range(n):
        if r == m:
            break
        sel = None
        for i in range(r, m):
            if rows[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            rows[r], rows[sel] = rows[sel], rows[r]
        piv = rows[r][col]
        for i in range(r + 1, m):
            ric = rows[i][col]
            row_i, row_r = rows[i], rows[r]
            for j in range(col + 1, n):
                row_i[j] = (piv * row_i[j] - ric * row_r[j]) // prev
            row_i[col] = 0
        prev = piv
        pivots.append(col)
        r += 1
    return rows[: len(pivots)], pivots


def rref(rows: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form over Q.

    Returns (pivot_columns, reduced_rows); reduced_rows has one row per pivot,
    each with leading coefficient 1 and zeros above and below every pivot.
    """
    ech, pivots = _bareiss_echelon(_to_int_rows(rows))
    red = [[Fraction(c) for c in row] for row in ech]
    for k in range(len(pivots) - 1, -1, -1):
        p = pivots[k]
        lead = red[k][p]
        red[k] = [c / lead for c in red[k]]
        for i in range(k):
            factor = red[i][p]
            if factor:
                red[i] = [a - factor * b for a, b in zip(red[i], red[k])]
    return pivots, red


def rank(rows: Sequence[Sequence]) -> int:
    return len(_bareiss_echelon(_to_int_rows(rows))[1])


def kernel_basis(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of {v : A v = 0} in reduced echelon form w.r.t. column order."""
    pivots, red = rref(rows)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    vecs = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for k, p in enumerate(pivots):
            v[p] = -red[k][fc]
        vecs.append(v)
    # present the kernel canonically
    _, canon = rref(vecs)
    return canon


def solve_columns(cols: Sequence[Sequence], target: Sequence) -> Optional[Vector]:
    """One exact solution c of  sum_j c_j * cols[j] = target, or None.

    Deterministic: free coordinates are set to zero.
    """
    ncols = len(cols)
    nrows = len(target)
    aug = []
    for i in range(nrows):
        aug.append([Fraction(cols[j][i]) for j in range(ncols)] + [Fraction(target[i])])
    pivots, red = rref(aug)
    if ncols in pivots:
        return None
    sol = [Fraction(0)] * ncols
    for k, p in enumerate(pivots):
        sol[p] = red[k][ncols]
    return sol


def in_span(v: Sequence, basis: Sequence[Sequence]) -> Optional[Vector]:
    """Coefficients expressing v in terms of basis, or None if outside."""
    if not basis:
        return [] if not any(Fraction(c) for c in v) else None
    return solve_columns(basis, v)


def intersect_spans(basis_a: Sequence[Sequence], basis_b: Sequence[Sequence]) -> list:
    """Reduced basis of span(basis_a) ∩ span(basis_b)."""
    if not basis_a or not basis_b:
        return []
    n = len(basis_a[0])
    ka, kb = len(basis_a), len(basis_b)
    # columns: the a-vectors then the negated b-vectors; kernel rows give
    # coefficient pairs (u, w) with u·A = w·B
    rows = []
    for i in range(n):
        rows.append(
            [Fraction(basis_a[j][i]) for j in range(ka)]
            + [-Fraction(basis_b[j][i]) for j in range(kb)]
        )
    combos = kernel_basis(rows, ka + kb)
    vecs = []
    for c in combos:
        v = [Fraction(0)] * n
        for j in range(ka):
            if c[j]:
                for i in range(n):
                    v[i] += c[j] * Fraction(basis_a[j][i])
        vecs.append(v)
    _, red = rref(vecs)
    return red


def mat_vec(rows: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum((Fraction(a) * Fraction(b) for a, b in zip(row, v)), Fraction(0)) for row in rows]


@dataclass(frozen=True)
class QMatrix:
    """Dense exact rational matrix with optional row/column labels."""

    entries: tuple  # tuple of tuples of Fraction
    row_labels: tuple = ()
    col_labels: tuple = ()

    @staticmethod
    def from_rows(rows, row_labels=(), col_labels=()) -> "QMatrix":
        ent = tuple(tuple(Fraction(c) for c in r) for r in rows)
        return QMatrix(ent, tuple(row_labels), tuple(col_labels))

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def rank(self) -> int:
        return rank(self.entries)

    def kernel(self) -> tuple:
        """(rank, kernel basis vectors); rank + dim kernel = ncols."""
        vecs = kernel_basis(self.entries, self.ncols)
        return self.ncols - len(vecs), vecs

    def transpose(self) -> "QMatrix":
        return QMatrix(tuple(zip(*self.entries)) if self.entries else ())

    def apply(self, v: Sequence) -> Vector:
        return mat_vec(self.entries, v)
