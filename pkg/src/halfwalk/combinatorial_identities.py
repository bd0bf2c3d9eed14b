"""Combinatorial explanations: convergents, reflection, and the cycle lemma."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Dict, List

from .exact_series import ExactRational, SeriesT, rdiv, series_inverse
from .walk_engine import CountTable

CYCLE_BRUTE_LIMIT = 22


class NotCoprime(ValueError):
    pass


class TooLarge(ValueError):
    pass


def binom(n: int, k) -> int:
    """C(n, k), zero outside 0 <= k <= n (and for non-integral k)."""
    if k != int(k):
        return 0
    k = int(k)
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class Convergent:
    k: int
    series: SeriesT


def cf_convergent(k: int, N: int) -> Convergent:
    """F_0 = 1, F_k = 1/(1 - t^2 F_{k-1}): excursions of height at most k."""
    if k < 0 or N < 0:
        raise ValueError("k and N must be non-negative")
    F = SeriesT.scalar(1, N)
    one = SeriesT.scalar(1, N)
    for _ in range(k):
        F = series_inverse(one - F.shift_t(2).truncate(N))
    return Convergent(k, F)


def bounded_dp(k: int, N: int) -> CountTable:
    """Walks with steps +-1 confined to {0, ..., k}."""
    if k < 0 or N < 0:
        raise ValueError("k and N must be non-negative")
    rows: List[Dict[int, ExactRational]] = [{0: 1}]
    for _ in range(N):
        cur: Dict[int, ExactRational] = {}
        for i, c in rows[-1].items():
            for j in (i - 1, i + 1):
                if 0 <= j <= k:
                    cur[j] = cur.get(j, 0) + c
        rows.append(dict(sorted(cur.items())))
    return CountTable(N, tuple(rows))


def reflection_count(i: int, n: int) -> ExactRational:
    """f(i;n) = C(n, (n-i)/2) - C(n, (n-i-2)/2); cross-checked against the ratio form."""
    if i < 0 or n < 0:
        raise ValueError("i and n must be non-negative")
    if i > n or (n - i) % 2:
        return 0
    h = (n - i) // 2
    diff = binom(n, h) - binom(n, h - 1)
    ratio = reflection_ratio_form(i, n)
    if ratio != diff:
        raise AssertionError(f"reflection forms disagree at i={i}, n={n}: {diff} vs {ratio}")
    return diff


def reflection_ratio_form(i: int, n: int) -> ExactRational:
    """(2i+2)/(n+i+2) * C(n, (n-i)/2)."""
    if i > n or (n - i) % 2:
        return 0
    return rdiv((2 * i + 2) * binom(n, (n - i) // 2), n + i + 2)


def cycle_count(r: int, s: int) -> ExactRational:
    """Lattice paths (0,0) -> (r,s) with unit steps weakly below r*y = s*x."""
    if r < 1 or s < 1:
        raise ValueError("r and s must be positive")
    if math.gcd(r, s) != 1:
        raise NotCoprime(f"gcd({r}, {s}) = {math.gcd(r, s)}")
    return rdiv(math.comb(r + s, s), r + s)


def cycle_brute(r: int, s: int) -> ExactRational:
    """Exhaustive count over all C(r+s, s) step sequences."""
    if r < 1 or s < 1:
        raise ValueError("r and s must be positive")
    if math.gcd(r, s) != 1:
        raise NotCoprime(f"gcd({r}, {s}) = {math.gcd(r, s)}")
    if r + s > CYCLE_BRUTE_LIMIT:
        raise TooLarge(f"r + s = {r + s} exceeds the exhaustion bound {CYCLE_BRUTE_LIMIT}")
    total = 0
    L = r + s
    for ups in itertools.combinations(range(L), s):
        up = set(ups)
        x = y = 0
        ok = True
        for pos in range(L):
            if pos in up:
                y += 1
                if r * y > s * x:
                    ok = False
                    break
            else:
                x += 1
        total += ok
    return total

