import pytest

from halfwalk.exact_series import LaurentPoly, SeriesT
from halfwalk.guessing import (
    EXCURSION_POLY,
    KERNEL_MINPOLY,
    SeedMismatch,
    SingularRoot,
    UnderdeterminedSystem,
    annihilator_combine,
    constant_annihilator,
    divides,
    evaluate_at_series,
    guess_algebraic,
    kernel_certificate,
    normalize,
    pseudo_remainder,
    resultant,
    series_root,
    split_y_power,
    tripoly,
    verify_kernel_solution,
)
from halfwalk.polys import MPoly
from halfwalk.walk_engine import SIMPLE, fixpoint_solve


@pytest.fixture(scope="module")
def kernel_guess():
    return guess_algebraic(fixpoint_solve(SIMPLE, 8), 2, 2, 2)


def test_guess_dimension_one(kernel_guess):
    assert kernel_guess.nullspace_dim == 1
    assert (kernel_guess.equations, kernel_guess.unknowns) == (63, 27)


def test_guess_candidate_is_kernel_minpoly(kernel_guess):
    assert kernel_guess.candidate == normalize(tripoly(KERNEL_MINPOLY))


def test_guess_confirms_at_higher_order():
    rep = guess_algebraic(fixpoint_solve(SIMPLE, 8), 2, 2, 2, confirm=fixpoint_solve(SIMPLE, 20))
    assert rep.confirmed_to == 20


def test_guess_excursions():
    F0 = fixpoint_solve(SIMPLE, 12).x_coefficient(0)
    rep = guess_algebraic(F0, 0, 2, 2)
    assert rep.candidate == normalize(tripoly(EXCURSION_POLY))


def test_guess_rational_series():
    rep = guess_algebraic(SeriesT.from_scalars([1] * 10), 0, 1, 1)
    assert rep.candidate == normalize(tripoly("(1 - t)*Y - 1"))


def test_guess_underdetermined():
    with pytest.raises(UnderdeterminedSystem):
        guess_algebraic(fixpoint_solve(SIMPLE, 2), 2, 2, 2)


def test_guess_too_small_ansatz_finds_nothing():
    rep = guess_algebraic(fixpoint_solve(SIMPLE, 10), 1, 1, 1)
    assert rep.nullspace_dim == 0 and rep.candidate is None


def test_normalize_is_sign_and_content_invariant():
    P = tripoly(KERNEL_MINPOLY)
    assert normalize(P.scale(-6)) == normalize(P)


def test_series_root_reproduces_walk_series():
    F = series_root(tripoly(KERNEL_MINPOLY), SeriesT.scalar(1, 0), 12)
    assert F == fixpoint_solve(SIMPLE, 12)


def test_series_root_seed_errors():
    with pytest.raises(SeedMismatch):
        series_root(tripoly(EXCURSION_POLY), SeriesT.scalar(2, 0), 5)
    with pytest.raises(SingularRoot):
        # Y^2 - t^2 has a double root at t = 0
        series_root(tripoly("Y^2 - t^2"), SeriesT.scalar(0, 0), 5)


def test_resultant_eliminates():
    V = ("x", "t", "Y")
    x = MPoly.gen(V, "x")
    Y = MPoly.gen(V, "Y")
    one = MPoly.const(V, 1)
    # res_Y(Y - x, Y^2 - 2) = x^2 - 2
    r = resultant(Y - x, Y * Y - one.scale(2), "Y")
    assert r == x * x - one.scale(2) or r == (x * x - one.scale(2)).scale(-1)


def test_annihilator_sum_and_product():
    # Y = 1/(1-t) and Y = t: sum is (1 - t + t^2)/(1-t), product t/(1-t)
    a = tripoly("(1 - t)*Y - 1")
    b = constant_annihilator(tripoly("t"))
    N = 10
    ya = SeriesT.from_scalars([1] * (N + 1))
    yb = SeriesT.from_scalars([0, 1], N)
    s = annihilator_combine(a, b, "sum")
    p = annihilator_combine(a, b, "product")
    assert evaluate_at_series(s, ya + yb).is_zero()
    assert evaluate_at_series(p, ya * yb).is_zero()


def test_annihilator_of_kernel_residual():
    cert = kernel_certificate(tripoly(KERNEL_MINPOLY), 16)
    factor = tripoly("Y*(1 - 4*t^2 - t^2*Y^2)")
    assert divides(factor, cert.annihilator)
    assert cert.y_multiplicity == 2


def test_pseudo_remainder_zero_on_multiple():
    B = tripoly("t*Y^2 - Y + t")
    A = B * tripoly("x*Y + 3")
    assert pseudo_remainder(A, B).is_zero()
    assert not divides(B, A + tripoly("Y"))


def test_split_y_power():
    m, rest = split_y_power(tripoly("Y^3*(1 + t*Y)"))
    assert m == 3 and rest == tripoly("1 + t*Y")


def test_verify_kernel_solution_true():
    assert verify_kernel_solution(tripoly(KERNEL_MINPOLY), 16)
    assert verify_kernel_solution(tripoly(EXCURSION_POLY), 16)


def test_verify_rejects_perturbed_candidate():
    P = tripoly(KERNEL_MINPOLY) + tripoly("x^2*t^2*Y^2")
    assert not verify_kernel_solution(P, 16)


def test_verify_rejects_wrong_excursion_polynomial():
    assert not verify_kernel_solution(tripoly("1 - Y + 2*t^2*Y^2"), 16)


def test_certificate_reports_separation():
    cert = kernel_certificate(tripoly(KERNEL_MINPOLY), 16)
    assert cert.residual_zero
    assert cert.first_separating_order is not None
    assert cert.first_separating_order <= 16
