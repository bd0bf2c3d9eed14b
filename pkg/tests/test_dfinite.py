import math
from fractions import Fraction

import pytest

from halfwalk.dfinite import (
    LeadingCoeffVanishes,
    LinODE,
    NotSquarefree,
    PRec,
    ZeroDenominator,
    algebraic_to_ode,
    convolution_f0,
    even_part,
    first_order_product,
    first_relation,
    ode_to_rec,
    rec_unroll,
)
from halfwalk.guessing import EXCURSION_POLY, tripoly
from halfwalk.polys import UPoly, parse_upoly
from halfwalk.walk_engine import SIMPLE, dp_count


def P(text):
    return parse_upoly(text, "t")


def N(text):
    return parse_upoly(text, "n")


def same_up_to_normalization(a: LinODE, b: LinODE) -> bool:
    return a.normalized() == b.normalized()


@pytest.fixture(scope="module")
def excursion_ode():
    return algebraic_to_ode(tripoly(EXCURSION_POLY))


def test_first_relation():
    target = LinODE((P("t*(1 - 4*t^2)"), P("2*(1 - 2*t^2)")), P("2"))
    assert same_up_to_normalization(first_relation(tripoly(EXCURSION_POLY)), target)


def test_second_order_ode(excursion_ode):
    target = LinODE((P("t*(1 - 4*t^2)"), P("3 - 16*t^2"), P("-8*t")))
    assert excursion_ode.homogeneous
    assert same_up_to_normalization(excursion_ode, target)


def test_ode_annihilates_excursions(excursion_ode, excursions):
    assert not any(excursion_ode.apply(excursions))
    assert not any(first_relation(tripoly(EXCURSION_POLY)).apply(excursions))


def test_recurrence(excursion_ode):
    R = ode_to_rec(excursion_ode)
    assert R.normalized() == PRec((N("4 + n"), UPoly(), N("-4*(1 + n)"))).normalized()


def test_recurrence_residuals(excursion_ode, excursions):
    R = ode_to_rec(excursion_ode)
    for n in range(len(excursions) - R.order):
        assert R.residual(excursions, n) == 0


def test_unroll_matches_dp():
    R = ode_to_rec(algebraic_to_ode(tripoly(EXCURSION_POLY)))
    assert rec_unroll(R, [1, 0], 300) == dp_count(SIMPLE, 300).column(0)


def test_convolution_matches_dp():
    assert convolution_f0(60) == dp_count(SIMPLE, 60).column(0)


def test_even_part_and_product():
    R = ode_to_rec(algebraic_to_ode(tripoly(EXCURSION_POLY)))
    G = even_part(R)
    assert G.normalized() == PRec((N("4 + 2*n"), N("-4*(1 + 2*n)"))).normalized()
    cat = [math.comb(2 * m, m) // (m + 1) for m in range(30)]
    assert rec_unroll(G, [1], 29) == cat
    assert [first_order_product(G, 1, m) for m in range(30)] == cat


def test_rational_series_gives_first_order():
    L = algebraic_to_ode(tripoly("(1 - t)*Y - 1"))
    assert L.order == 1
    R = ode_to_rec(L)
    assert rec_unroll(R, [1], 5) == [1] * 6


def test_not_squarefree():
    with pytest.raises(NotSquarefree):
        algebraic_to_ode(tripoly("(1 - Y + t^2*Y^2)^2"))


def test_leading_coefficient_vanishes():
    R = PRec((N("n - 3"), N("1")))
    with pytest.raises(LeadingCoeffVanishes) as info:
        rec_unroll(R, [1], 10)
    assert info.value.n == 3


def test_zero_denominator():
    R = PRec((N("n - 2"), N("1")))
    with pytest.raises(ZeroDenominator):
        first_order_product(R, 1, 5)


def test_rational_initial_values():
    R = PRec((N("n + 1"), N("-1")))
    vals = rec_unroll(R, [1], 6)
    assert vals == [Fraction(1, math.factorial(n)) for n in range(7)]
