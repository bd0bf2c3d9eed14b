import math

import pytest

from halfwalk.closed_forms import (
    METHODS,
    UnsupportedStepSet,
    classical_kernel,
    invariant_identity_check,
    kernel_roots,
    lagrange_f0,
    orbit_sum,
    unrestricted_inverse,
    wh_factorize,
    wiener_hopf,
    x1_via_plus_branch,
)
from halfwalk.exact_series import LaurentPoly, SeriesT, nonneg_part
from halfwalk.walk_engine import SIMPLE, StepSet, fixpoint_solve


@pytest.mark.parametrize("name", sorted(METHODS))
def test_methods_match_fixpoint(name):
    assert METHODS[name](40) == fixpoint_solve(SIMPLE, 40)


def test_orbit_sum_order_zero():
    assert orbit_sum(0) == SeriesT.scalar(1, 0)


def test_kernel_roots_are_roots():
    kd = kernel_roots(20)
    # t x0^2 - x0 + t = 0
    x0 = kd.x0
    res = (x0 * x0).shift_t(1).truncate(20) - x0 + SeriesT.t_monomial(1, 1, 20)
    assert res.is_zero()
    assert kd.x1 == x1_via_plus_branch(20)


def test_x0_is_shifted_catalan():
    kd = kernel_roots(15)
    cat = [math.comb(2 * m, m) // (m + 1) for m in range(8)]
    expected = [cat[(n - 1) // 2] if n % 2 else 0 for n in range(16)]
    assert kd.x0.scalars() == expected


def test_classical_returns_excursions(excursions):
    F0, F = classical_kernel(30)
    assert F0.scalars() == excursions[:31]
    assert F.x_coefficient(0) == F0


def test_lagrange_f0(excursions):
    assert [lagrange_f0(n) for n in range(41)] == excursions


def test_invariant_residual_zero():
    assert invariant_identity_check(60).is_zero()


def test_invariant_residual_detects_wrong_input():
    F0 = SeriesT.from_scalars([1, 0, 1, 0, 2, 0, 6], 6)
    assert not invariant_identity_check(6, F0).is_zero()


def test_factor_supports():
    Fm, F0, Fp = wh_factorize(20)
    assert all(c.max_deg is None or c.max_deg <= 0 for c in Fm.coeffs)
    assert all(c.min_deg is None or c.min_deg >= 0 for c in Fp.coeffs)
    assert Fm.x_coefficient(0).scalars()[0] == 1
    assert Fp.x_coefficient(0).scalars()[0] == 1
    assert nonneg_part(Fp) == Fp


def test_factorization_product():
    Fm, F0, Fp = wh_factorize(30)
    assert Fm * F0 * Fp == unrestricted_inverse(30)


def test_unrestricted_inverse_central_binomials():
    U = unrestricted_inverse(10)
    assert [U[n][n % 2] for n in range(11)] == [math.comb(n, n // 2) for n in range(11)]
    assert U[4] == LaurentPoly({-4: 1, -2: 4, 0: 6, 2: 4, 4: 1})


@pytest.mark.parametrize("fn", [wiener_hopf, orbit_sum, wh_factorize])
def test_other_step_sets_refused(fn):
    with pytest.raises(UnsupportedStepSet):
        fn(5, StepSet([-2, 1]))
