"""Fraction-free Gaussian elimination over the rationals."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import List, Sequence, Tuple

from .exact_series import ExactRational, rat


def _integer_rows(rows: Sequence[Sequence[ExactRational]]) -> List[List[int]]:
    out = []
    for row in rows:
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (Fraction(v).denominator for v in row), 1)
        out.append([int(Fraction(v) * den) for v in row])
    return out


def bareiss_echelon(rows: Sequence[Sequence[ExactRational]]) -> Tuple[List[List[int]], List[int]]:
    """Row echelon form with integer entries, plus the pivot columns.

    One-step Bareiss: every division performed is exact, so entries stay
    integral and bounded by minors of the input.
    """
    m = _integer_rows(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, len(m)):
            a = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c, ncols):
                row_i[j] = (row_i[j] * piv - a * row_r[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[ExactRational]], ncols: int) -> List[List[ExactRational]]:
    """Basis of the right kernel, one vector per free column (that column set to 1)."""
    if not rows:
        return [[1 if j == f else 0 for j in range(ncols)] for f in range(ncols)]
    ech, pivots = bareiss_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x: List[Fraction] = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            row = ech[r]
            s = sum((row[j] * x[j] for j in range(c + 1, ncols) if row[j] and x[j]), Fraction(0))
            x[c] = -s / row[c]
        basis.append([rat(v) for v in x])
    return basis


def rank(rows: Sequence[Sequence[ExactRational]]) -> int:
    return len(bareiss_echelon(rows)[1])
