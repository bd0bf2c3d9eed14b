from decimal import Decimal, localcontext
from fractions import Fraction

import pytest

from halfwalk.asymptotics import (
    AsympExpansion,
    IndexOutOfRange,
    IrrationalRoot,
    NonPositivePhi,
    RamifiedCase,
    RepeatedRoot,
    characteristic_polynomial,
    estimate_constant,
    formal_residual,
    poincare_expansion,
)
from halfwalk.dfinite import PRec, rec_unroll
from halfwalk.polys import parse_upoly

CATALAN_C = (Fraction(-9, 8), Fraction(145, 128), Fraction(-1155, 1024), Fraction(36939, 32768))


def rec(*parts):
    return PRec(tuple(parse_upoly(p, "n") for p in parts))


def machin_pi(digits):
    """pi = 16 atan(1/5) - 4 atan(1/239), summed in Decimal."""
    with localcontext() as ctx:
        ctx.prec = digits + 10

        def atan_inv(m):
            x = Decimal(1) / m
            x2 = x * x
            term, total, k = x, x, 1
            while True:
                term *= -x2
                nxt = term / (2 * k + 1)
                if nxt == 0 or abs(nxt) < Decimal(10) ** (-(digits + 8)):
                    break
                total += nxt
                k += 1
            return total

        return 16 * atan_inv(5) - 4 * atan_inv(239)


def inv_sqrt_pi(digits=50):
    with localcontext() as ctx:
        ctx.prec = digits + 5
        return 1 / machin_pi(digits).sqrt()


CATALAN_REC = rec("4 + 2n", "-4(1 + 2n)")


@pytest.fixture(scope="module")
def catalan_values():
    return rec_unroll(CATALAN_REC, [1], 10_000)


def test_catalan_expansion():
    (E,) = poincare_expansion(CATALAN_REC, 4)
    assert E.phi == 4 and E.alpha == Fraction(-3, 2)
    assert E.c == CATALAN_C


def test_constant_sequence():
    (E,) = poincare_expansion(rec("1", "-1"), 3)
    assert (E.phi, E.alpha, E.c) == (1, 0, (0, 0, 0))


def test_reciprocal_sequence():
    # f_n = 1/(n+1) = n^-1 (1 - 1/n + 1/n^2 - ...)
    (E,) = poincare_expansion(rec("n + 2", "-(n + 1)"), 6)
    assert (E.phi, E.alpha) == (1, -1)
    assert E.c == tuple((-1) ** k for k in range(1, 7))


def test_even_odd_excursion_recurrence_has_two_roots():
    exps = poincare_expansion(rec("4 + n", "0", "-4(1 + n)"), 2)
    assert sorted(E.phi for E in exps) == [-2, 2]
    for E in exps:
        assert E.alpha == Fraction(-3, 2)


def test_characteristic_polynomial():
    chi = characteristic_polynomial(rec("4 + n", "0", "-4(1 + n)"))
    assert chi == parse_upoly("p^2 - 4", "p")


@pytest.mark.parametrize(
    "parts, err",
    [
        (("1", "0", "-2"), IrrationalRoot),
        (("1", "-2", "1"), RepeatedRoot),
        (("n", "-1"), RamifiedCase),
    ],
)
def test_excluded_cases_raise(parts, err):
    with pytest.raises(err):
        poincare_expansion(rec(*parts), 2)


def test_residual_vanishes_through_depth():
    (E,) = poincare_expansion(CATALAN_REC, 4)
    assert not any(formal_residual(CATALAN_REC, E.phi, E.alpha, E.c, 5))


def test_growth_constant(catalan_values):
    (E,) = poincare_expansion(CATALAN_REC, 4)
    est = estimate_constant(catalan_values, E, [1000, 5000, 10_000])
    assert abs(est.value - inv_sqrt_pi()) < Decimal("1e-6")
    assert est.bracket < Decimal("1e-6")


def test_estimate_improves_with_n(catalan_values):
    (E,) = poincare_expansion(CATALAN_REC, 4)
    target = inv_sqrt_pi()
    errs = [abs(estimate_constant(catalan_values, E, [n]).value - target) for n in (100, 1000, 10_000)]
    assert errs[0] > errs[1] > errs[2]
    widths = [
        estimate_constant(catalan_values, E, pts).bracket
        for pts in ([100, 1000, 10_000], [1000, 10_000], [10_000])
    ]
    assert widths[0] > widths[1] > widths[2]


def test_estimate_trivial_and_scaled():
    E = AsympExpansion(1, 0, ())
    assert estimate_constant([1] * 10, E, [3, 9]).value == 1
    (C,) = poincare_expansion(CATALAN_REC, 4)
    vals = rec_unroll(CATALAN_REC, [1], 200)
    base = estimate_constant(vals, C, [200]).value
    scaled = estimate_constant([7 * v for v in vals], C, [200]).value
    with localcontext() as ctx:
        ctx.prec = 80
        assert abs(scaled - 7 * base) < Decimal("1e-45")


def test_estimate_errors():
    with pytest.raises(NonPositivePhi):
        estimate_constant([1, 2, 3], AsympExpansion(-2, 0, ()), [1])
    with pytest.raises(IndexOutOfRange):
        estimate_constant([1, 2, 3], AsympExpansion(1, 0, ()), [5])


def test_machin_oracle_digits():
    assert str(machin_pi(30))[:32] == "3.141592653589793238462643383279"


def test_json_form():
    (E,) = poincare_expansion(CATALAN_REC, 2)
    assert E.to_json() == {"phi": "4", "alpha": "-3/2", "c": ["-9/8", "145/128"]}
