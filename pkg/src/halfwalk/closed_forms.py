"""Closed-form solutions of the kernel equation for the simple walk, steps {-1, 1}.

x(1 - t(x + 1/x)) F(x;t) = x - t F(0;t)

Every function returns truncated series that can be compared against the
walk_engine oracles coefficient for coefficient.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .exact_series import (
    ExactRational,
    LaurentPoly,
    LaurentSeriesT,
    SeriesT,
    nonneg_part,
    rdiv,
    series_inverse,
    series_sqrt,
)
from .polys import MPoly
from .walk_engine import SIMPLE, StepSet, dp_count

TRI = ("x", "t", "Y")


class UnsupportedStepSet(ValueError):
    pass


def _require_simple(steps: Optional[StepSet]) -> None:
    if steps is not None and StepSet(steps) != SIMPLE:
        raise UnsupportedStepSet(f"closed forms are only available for steps (-1, 1), got {tuple(steps)}")


def kernel_polynomial() -> MPoly:
    """x(1 - t(x + 1/x)) = x - t x^2 - t, as a polynomial in (x, t, Y)."""
    return MPoly(TRI, {(1, 0, 0): 1, (2, 1, 0): -1, (0, 1, 0): -1})


def unrestricted_inverse(N: int) -> SeriesT:
    """1/(1 - t(x + 1/x)): walks on the whole line."""
    return series_inverse(SeriesT([1, LaurentPoly({1: -1, -1: -1})], N))


@dataclass(frozen=True)
class KernelData:
    K: MPoly
    x0: SeriesT
    x1: LaurentSeriesT
    order: int


def _x0_raw(M: int) -> SeriesT:
    """(1 - sqrt(1 - 4t^2)) / (2t) to order M."""
    root = series_sqrt(SeriesT([1, 0, -4], M + 1))
    num = SeriesT.scalar(1, M + 1) - root
    if num.coeffs[0]:
        raise AssertionError("branch error: numerator has a constant term")
    if any(num.coeffs[k] for k in range(1, M + 2, 2)):
        raise AssertionError("branch error: odd coefficients in 1 - sqrt(1 - 4t^2)")
    return num.divide_t(1) * rdiv(1, 2)


def kernel_roots(N: int, steps: Optional[StepSet] = None) -> KernelData:
    """The two roots of the kernel in x: x0 in Q[[t]] and x1 = 1/x0 with valuation -1."""
    _require_simple(steps)
    if N < 1:
        raise ValueError("kernel_roots needs N >= 1")
    x0_long = _x0_raw(N + 2)
    x1 = LaurentSeriesT.from_series(x0_long).inverse()
    # x0 to order N+2 has relative precision N+2 -> x1 known to order N
    x1 = LaurentSeriesT(x1.valuation, x1.coeffs, N)
    return KernelData(kernel_polynomial(), x0_long.truncate(N), x1, N)


def x1_via_plus_branch(N: int) -> LaurentSeriesT:
    """(1 + sqrt(1 - 4t^2)) / (2t), used only to cross-check kernel_roots."""
    root = series_sqrt(SeriesT([1, 0, -4], N + 1))
    num = SeriesT.scalar(1, N + 1) + root
    half = [c.scale(rdiv(1, 2)) for c in num.coeffs]
    return LaurentSeriesT(-1, half, N)


def classical_kernel(N: int, steps: Optional[StepSet] = None) -> Tuple[SeriesT, SeriesT]:
    """F(0;t) = x0/t and F(x;t) = (1 - x0/x) / (1 - t(x + 1/x))."""
    _require_simple(steps)
    x0 = _x0_raw(N + 1)
    F0 = x0.divide_t(1)
    numerator = SeriesT.scalar(1, N) - x0.truncate(N).x_shift(-1)
    F = numerator * unrestricted_inverse(N)
    if nonneg_part(F) != F:
        raise AssertionError("classical kernel solution has negative powers of x")
    return F0, F


def _geometric(q: SeriesT, N: int) -> SeriesT:
    """sum_{k>=0} q^k for val(q) >= 1; term k only reaches orders >= k."""
    total = SeriesT.scalar(1, N)
    power = SeriesT.scalar(1, N)
    for _ in range(N):
        power = power * q
        if power.is_zero():
            break
        total = total + power
    return total


def _inv_x1_and_F0(N: int) -> Tuple[SeriesT, SeriesT]:
    kd = kernel_roots(N + 1)
    inv_x1 = kd.x1.inverse().to_series().truncate(N)  # = x0
    t_x1 = LaurentSeriesT(kd.x1.valuation + 1, kd.x1.coeffs, kd.x1.order + 1)
    F0 = t_x1.inverse().to_series().truncate(N)
    return inv_x1, F0


def wiener_hopf(N: int, steps: Optional[StepSet] = None) -> SeriesT:
    """F(x;t) = -1/(t(x - x1)) = (1/(t x1)) * sum_k (x/x1)^k."""
    _require_simple(steps)
    inv_x1, F0 = _inv_x1_and_F0(N)
    return F0 * _geometric(inv_x1.x_shift(1), N)


def orbit_sum(N: int, steps: Optional[StepSet] = None) -> SeriesT:
    """F(x;t) = [x^>=] (1 - 1/x^2) / (1 - t(x + 1/x))."""
    _require_simple(steps)
    return nonneg_part(unrestricted_inverse(N) * LaurentPoly({0: 1, -2: -1}))


def lagrange_f0(n: int) -> ExactRational:
    """Excursion count f(0;n) = (1/(n+1)) [t^-1] (t + 1/t)^(n+1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    base = LaurentPoly({1: 1, -1: 1})
    acc = LaurentPoly({0: 1})
    m = n + 1
    while m:
        if m & 1:
            acc = acc * base
        base = base * base
        m >>= 1
    return rdiv(acc[-1], n + 1)


def invariant_identity_check(N: int, F0: Optional[SeriesT] = None) -> SeriesT:
    """Residual 1 - F0 + t^2 F0^2, with F0 taken from the DP oracle unless supplied."""
    if F0 is None:
        F0 = SeriesT.from_scalars(dp_count(SIMPLE, N).column(0), N)
    one = SeriesT.scalar(1, F0.order)
    return one - F0 + (F0 * F0).shift_t(2).truncate(F0.order)


def wh_factorize(N: int, steps: Optional[StepSet] = None) -> Tuple[SeriesT, SeriesT, SeriesT]:
    """Factors F-, F(0;t), F+ of 1/(1 - t(x + 1/x)).

    F- = 1/(1 - x0/x) involves only x^{<=0}, F+ = 1/(1 - x/x1) only x^{>=0},
    and both have x-constant term 1.
    """
    _require_simple(steps)
    inv_x1, F0 = _inv_x1_and_F0(N)
    Fminus = _geometric(inv_x1.x_shift(-1), N)
    Fplus = _geometric(inv_x1.x_shift(1), N)
    return Fminus, F0, Fplus


METHODS = {
    "classical": lambda N: classical_kernel(N)[1],
    "wiener-hopf": wiener_hopf,
    "orbit-sum": orbit_sum,
    "factorization": lambda N: (lambda f: f[1] * f[2])(wh_factorize(N)),
}
