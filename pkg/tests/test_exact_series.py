import math
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import series
from halfwalk.exact_series import (
    BadConstantTerm,
    LaurentPoly,
    LaurentSeriesT,
    NotInvertible,
    SeriesT,
    laurent_arith,
    nonneg_part,
    rat,
    rat_str,
    series_arith,
    series_inverse,
    series_sqrt,
    valuation,
)


def test_rat_collapses_integral_fractions():
    assert rat(Fraction(6, 3)) == 2 and type(rat(Fraction(6, 3))) is int
    assert rat("3/4") == Fraction(3, 4)
    assert rat_str(Fraction(-3, 4)) == "-3/4"
    assert rat_str(5) == "5"


def test_laurent_arith_examples():
    a = LaurentPoly({1: 1, -1: 1})
    assert laurent_arith(a, a, "mul") == LaurentPoly({2: 1, 0: 2, -2: 1})
    assert laurent_arith(a, a, "sub") == LaurentPoly()
    assert laurent_arith(a, LaurentPoly({1: -1}), "add") == LaurentPoly({-1: 1})
    with pytest.raises(ValueError):
        laurent_arith(a, a, "div")


def test_zero_coefficients_are_dropped():
    assert LaurentPoly({3: 0, 1: 2}) == LaurentPoly({1: 2})
    assert not LaurentPoly({0: 0})


def test_laurent_shift_and_projection():
    p = LaurentPoly({-2: 1, 0: 3, 1: -1})
    assert p.shift(2) == LaurentPoly({0: 1, 2: 3, 3: -1})
    assert p.nonneg_part() == LaurentPoly({0: 3, 1: -1})
    assert p.substitute_inverse() == LaurentPoly({2: 1, 0: 3, -1: -1})
    assert p.evaluate(2) == Fraction(1, 4) + 3 - 2


def test_series_arith_takes_min_order():
    A = SeriesT.from_scalars([1, 2, 3], 2)
    B = SeriesT.from_scalars([1, 1], 1)
    assert series_arith(A, B, "add").order == 1
    assert series_arith(A, B, "mul") == SeriesT.from_scalars([1, 3], 1)


def test_inverse_of_one_minus_t():
    inv = series_inverse(SeriesT.from_scalars([1, -1], 10))
    assert inv.scalars() == [1] * 11


def test_inverse_of_monomial_lead_keeps_laurent():
    A = SeriesT([LaurentPoly({2: 3}), LaurentPoly({0: 1})], 3)
    inv = series_inverse(A)
    assert inv[0] == LaurentPoly({-2: Fraction(1, 3)})
    assert A * inv == SeriesT.scalar(1, 3)


def test_inverse_rejects_non_monomial_lead():
    with pytest.raises(NotInvertible):
        series_inverse(SeriesT([LaurentPoly({0: 1, 1: 1})], 2))
    with pytest.raises(NotInvertible):
        series_inverse(SeriesT.from_scalars([0, 1], 2))


def test_sqrt_of_catalan_discriminant():
    r = series_sqrt(SeriesT.from_scalars([1, -4], 8))
    # sqrt(1 - 4t) = 1 - 2 sum C_{n-1} t^n
    cat = [math.comb(2 * n, n) // (n + 1) for n in range(8)]
    assert r.scalars() == [1] + [-2 * cat[n - 1] for n in range(1, 9)]


def test_sqrt_rejects_bad_constant():
    with pytest.raises(BadConstantTerm):
        series_sqrt(SeriesT.from_scalars([4, 1], 3))
    with pytest.raises(BadConstantTerm):
        series_sqrt(SeriesT([LaurentPoly({0: 1}), LaurentPoly({1: 1})], 3))


def test_nonneg_part_example():
    A = SeriesT([LaurentPoly({0: 1}), LaurentPoly({-1: 1, 1: 1})], 1)
    assert nonneg_part(A) == SeriesT([LaurentPoly({0: 1}), LaurentPoly({1: 1})], 1)


def test_valuation():
    assert valuation(SeriesT.from_scalars([0, 0, 5], 4)) == 2
    assert valuation(SeriesT.scalar(0, 4)) == math.inf


def test_shift_and_divide_t():
    A = SeriesT.from_scalars([1, 2], 3)
    assert A.shift_t(2).scalars() == [0, 0, 1, 2, 0, 0]
    assert A.shift_t(2).divide_t(2) == A


def test_truncate_cannot_raise_order():
    with pytest.raises(ValueError):
        SeriesT.scalar(1, 2).truncate(3)


def test_laurent_series_inverse_of_valuation_one():
    x0 = LaurentSeriesT.from_series(SeriesT.from_scalars([0, 1, 0, 1], 3))
    inv = x0.inverse()
    assert inv.valuation == -1
    assert (x0 * inv).to_series() == SeriesT.scalar(1, (x0 * inv).order)


@given(series())
def test_series_to_str_mentions_order(a):
    assert a.to_str().endswith(f"O(t^{a.order + 1})")
