"""Formal solutions phi^n n^alpha (1 + c_1/n + ... + c_K/n^K) of P-recurrences.

Only the log-free, unramified case without Gamma factors is handled; each
excluded situation raises its own exception instead of returning a wrong
expansion.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import List, Sequence, Tuple

from .dfinite import PRec
from .exact_series import ExactRational, rat, rat_str
from .polys import UPoly

class IrrationalRoot(ValueError):
    def __init__(self, factor: UPoly):
        super().__init__(f"characteristic factor without rational roots: {factor.to_str('phi')}")
        self.factor = factor


class RepeatedRoot(ValueError):
    pass


class RamifiedCase(ValueError):
    pass


class NonPositivePhi(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class AsympExpansion:
    phi: ExactRational
    alpha: ExactRational
    c: Tuple[ExactRational, ...]

    @property
    def K(self) -> int:
        return len(self.c)

    def correction(self, n) -> Fraction:
        """1 + sum c_k n^-k, exactly."""
        n = Fraction(n)
        return 1 + sum((Fraction(ck) / n ** (k + 1) for k, ck in enumerate(self.c)), Fraction(0))

    def to_json(self) -> dict:
        return {"phi": rat_str(self.phi), "alpha": rat_str(self.alpha), "c": [rat_str(v) for v in self.c]}


def gbinom(a: Fraction, m: int) -> Fraction:
    out = Fraction(1)
    for i in range(m):
        out = out * (a - i) / (i + 1)
    return out


def characteristic_polynomial(R: PRec) -> UPoly:
    D = max(q.degree for q in R.coeffs)
    r = R.order
    cs = [0] * (r + 1)
    for j, q in enumerate(R.coeffs):
        cs[r - j] = q[D]
    return UPoly(cs)


def _divisors(m: int) -> List[int]:
    m = abs(m)
    small = [d for d in range(1, math.isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def rational_roots(p: UPoly) -> Tuple[List[Tuple[Fraction, int]], UPoly]:
    """Nonzero rational roots with multiplicities, and the cofactor left over.

    Roots at zero are divided out and not reported.
    """
    p = p.primitive()
    while p.degree > 0 and p[0] == 0:
        p = UPoly(p.coeffs[1:])
    roots = []
    if p.degree <= 0:
        return roots, p
    for num in _divisors(int(p[0])):
        for den in _divisors(int(p.lc())):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if any(cand == r for r, _ in roots):
                    continue
                mult = 0
                lin = UPoly([-cand, 1])
                while p.degree > 0 and p(cand) == 0:
                    p = p.exact_div(lin)
                    mult += 1
                if mult:
                    roots.append((cand, mult))
    return sorted(roots), p.primitive() if p else p


def _mul_trunc(a: List[Fraction], b: List[Fraction], M: int) -> List[Fraction]:
    out = [Fraction(0)] * (M + 1)
    for i, x in enumerate(a[: M + 1]):
        if x:
            for j, y in enumerate(b[: M + 1 - i]):
                out[i + j] += x * y
    return out


def _shift_power(i: int, alpha: Fraction, M: int) -> List[Fraction]:
    """(1 + i/n)^alpha in powers of 1/n."""
    return [gbinom(alpha, m) * Fraction(i) ** m for m in range(M + 1)]


def _shifted_correction(i: int, cs: Sequence[Fraction], M: int) -> List[Fraction]:
    """S(n+i) in powers of 1/n, S(n) = 1 + sum c_k n^-k."""
    out = [Fraction(0)] * (M + 1)
    out[0] = Fraction(1)
    for k, ck in enumerate(cs, start=1):
        if not ck or k > M:
            continue
        for m in range(M + 1 - k):
            out[k + m] += ck * gbinom(Fraction(-k), m) * Fraction(i) ** m
    return out


def formal_residual(R: PRec, phi, alpha, cs: Sequence, M: int) -> List[Fraction]:
    """Coefficients of n^0..n^-M in sum_j q_j(n) f(n+r-j) / (phi^n n^alpha n^D)."""
    phi, alpha = Fraction(phi), Fraction(alpha)
    cs = [Fraction(c) for c in cs]
    D = max(q.degree for q in R.coeffs)
    r = R.order
    total = [Fraction(0)] * (M + 1)
    for j, q in enumerate(R.coeffs):
        if not q:
            continue
        i = r - j
        qn = [Fraction(q[D - l]) if D - l >= 0 else Fraction(0) for l in range(M + 1)]
        term = _mul_trunc(qn, _shift_power(i, alpha, M), M)
        term = _mul_trunc(term, _shifted_correction(i, cs, M), M)
        w = phi ** i
        for L in range(M + 1):
            total[L] += w * term[L]
    return total


def _solve_affine(f, order: int) -> Fraction:
    """Root of the affine map u -> f(u)[order]."""
    f0 = f(Fraction(0))[order]
    f1 = f(Fraction(1))[order]
    slope = f1 - f0
    if slope == 0:
        raise RamifiedCase(f"unknown does not enter the equation at 1/n-order {order}")
    return -f0 / slope


def poincare_expansion(R: PRec, K: int) -> List[AsympExpansion]:
    if K < 0:
        raise ValueError("K must be non-negative")
    chi = characteristic_polynomial(R)
    roots, rest = rational_roots(chi)
    if rest.degree > 0:
        raise IrrationalRoot(rest)
    if any(m > 1 for _, m in roots):
        raise RepeatedRoot(f"repeated characteristic root(s): {[str(r) for r, m in roots if m > 1]}")
    if not roots:
        raise RamifiedCase("no nonzero characteristic root; a Gamma factor or exponential part is needed")
    out = []
    for phi, _ in roots:
        # the 1/n^1 equation is affine in alpha for a simple root
        alpha = _solve_affine(lambda a: formal_residual(R, phi, a, [], 1), 1)
        cs: List[Fraction] = []
        for L in range(1, K + 1):
            cL = _solve_affine(lambda u: formal_residual(R, phi, alpha, cs + [u], L + 1), L + 1)
            cs.append(cL)
        res = formal_residual(R, phi, alpha, cs, K + 1)
        if any(res):
            raise RamifiedCase("formal residual does not vanish; ansatz does not fit")
        out.append(AsympExpansion(rat(phi), rat(alpha), tuple(rat(c) for c in cs)))
    return out


@dataclass(frozen=True)
class Estimate:
    value: Decimal
    bracket: Decimal
    ratios: Tuple[Decimal, ...]
    n_points: Tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "estimate": str(self.value),
            "bracket": str(self.bracket),
            "ratios": [[n, str(v)] for n, v in zip(self.n_points, self.ratios)],
        }


def _n_power(n: int, alpha: Fraction) -> Decimal:
    if alpha == 0:
        return Decimal(1)
    return (Decimal(n).ln() * Decimal(alpha.numerator) / Decimal(alpha.denominator)).exp()


def estimate_constant(
    values: Sequence[ExactRational],
    E: AsympExpansion,
    n_points: Sequence[int],
    precision: int = 50,
) -> Estimate:
    """values[n] / (phi^n n^alpha (1 + sum c_k n^-k)) at each n, in decimal arithmetic."""
    if E.phi <= 0:
        raise NonPositivePhi(f"phi = {E.phi}")
    pts = tuple(int(n) for n in n_points)
    if not pts:
        raise ValueError("need at least one index")
    for n in pts:
        if n < 1 or n >= len(values):
            raise IndexOutOfRange(f"index {n} outside 1..{len(values) - 1}")
    phi = Fraction(E.phi)
    alpha = Fraction(E.alpha)
    ratios = []
    with localcontext() as ctx:
        ctx.prec = precision + 10
        for n in pts:
            exact = Fraction(values[n]) / (phi ** n * E.correction(n))
            d = Decimal(exact.numerator) / Decimal(exact.denominator)
            ratios.append(d / _n_power(n, alpha))
        value = ratios[-1]
        bracket = max(ratios) - min(ratios)
    with localcontext() as ctx:
        ctx.prec = precision
        ratios = [+r for r in ratios]
        value, bracket = +value, +bracket
    return Estimate(value, bracket, tuple(ratios), pts)
