"""Ground-truth counts of walks on the half-line.

Two independent routes: a row-by-row dynamic program, and iteration of the
functional equation F = 1 + [x^>=](t S(x) F) starting from F = 1.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .exact_series import ExactRational, LaurentPoly, SeriesT, nonneg_part


@dataclass(frozen=True)
class StepSet:
    steps: Tuple[int, ...]

    def __init__(self, steps: Iterable[int]):
        s = tuple(sorted(set(int(v) for v in steps)))
        if not s:
            raise ValueError("step set must be nonempty")
        if 0 in s:
            raise ValueError("steps must be nonzero")
        object.__setattr__(self, "steps", s)

    @property
    def constrained(self) -> bool:
        """False when no step is negative, i.e. the half-line constraint never binds."""
        return self.steps[0] < 0

    def polynomial(self) -> LaurentPoly:
        return LaurentPoly({s: 1 for s in self.steps})

    def __iter__(self):
        return iter(self.steps)


SIMPLE = StepSet((-1, 1))


@dataclass(frozen=True)
class CountTable:
    """``rows[n]`` maps end position i to the number f(i;n) of walks of length n."""

    max_len: int
    rows: Tuple[Dict[int, ExactRational], ...]

    def count(self, i: int, n: int) -> ExactRational:
        return self.rows[n].get(i, 0)

    def column(self, i: int) -> List[ExactRational]:
        return [row.get(i, 0) for row in self.rows]

    def to_json(self) -> dict:
        from .serialize import count_table_to_json

        return count_table_to_json(self)


def dp_count(S: StepSet, N: int) -> CountTable:
    if N < 0:
        raise ValueError("N must be non-negative")
    if not S.constrained:
        warnings.warn("step set has no negative step; the half-line constraint is vacuous", stacklevel=2)
    rows: List[Dict[int, ExactRational]] = [{0: 1}]
    for _ in range(N):
        prev = rows[-1]
        cur: Dict[int, ExactRational] = {}
        for i, c in prev.items():
            for s in S.steps:
                j = i + s
                if j >= 0:
                    cur[j] = cur.get(j, 0) + c
        rows.append(dict(sorted(cur.items())))
    return CountTable(N, tuple(rows))


def table_to_series(T: CountTable) -> SeriesT:
    return SeriesT([LaurentPoly(row) for row in T.rows], T.max_len)


def functional_step(S: StepSet, F: SeriesT) -> SeriesT:
    """One application of F -> 1 + [x^>=](t S(x) F)."""
    sx = S.polynomial()
    moved = (F * sx).shift_t(1).truncate(F.order)
    return nonneg_part(moved) + SeriesT.scalar(1, F.order)


def fixpoint_solve(S: StepSet, N: int) -> SeriesT:
    """Iterate the functional equation N times from the constant series 1.

    After m iterations the coefficients of t^0..t^m are final, so N
    iterations give the solution to order N.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    F = SeriesT.scalar(1, N)
    for _ in range(N):
        F = functional_step(S, F)
    return F


def iterate(S: StepSet, N: int, m: int) -> SeriesT:
    """m-th iterate of the functional operator applied to 1, kept to order N."""
    F = SeriesT.scalar(1, N)
    for _ in range(m):
        F = functional_step(S, F)
    return F
