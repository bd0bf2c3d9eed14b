"""Guess an annihilating polynomial from series data, then certify it.

Polynomials in (x, t, Y) are :class:`MPoly` instances over ``TRI``; the
exponent triple is (x-degree, t-degree, Y-degree).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .exact_series import INF, LaurentPoly, SeriesT, series_inverse, valuation
from .linalg import nullspace
from .polys import MPoly, bareiss_det, mpoly_to_series, parse_poly

TRI = ("x", "t", "Y")
_V4 = ("x", "t", "Y", "y1")


class UnderdeterminedSystem(ValueError):
    pass


class SingularRoot(ArithmeticError):
    pass


class SeedMismatch(ValueError):
    pass


class ZeroInput(ValueError):
    pass


class InconclusiveOrder(ArithmeticError):
    pass


def tripoly(text: str) -> MPoly:
    return parse_poly(text, TRI)


def _order_key(e: Tuple[int, int, int]) -> Tuple[int, int, int]:
    i, j, k = e
    return (k, j, i)


def normalize(P: MPoly) -> MPoly:
    """Clear denominators, remove content, leading (Y, t, x)-lex coefficient positive."""
    return P.primitive(key=_order_key)


@dataclass
class GuessReport:
    candidate: Optional[MPoly]
    nullspace_dim: int
    orders_used: int
    confirmed_to: int
    equations: int = 0
    unknowns: int = 0


def evaluate_at_series(P: MPoly, Y: SeriesT) -> SeriesT:
    """P(x, t, Y) with Y a series; result known to Y's order."""
    coeffs = P.coeff_list("Y")
    acc = SeriesT.scalar(0, Y.order)
    for c in reversed(coeffs):
        acc = acc * Y + mpoly_to_series(c, Y.order)
    return acc


def _powers(A: SeriesT, d: int) -> List[SeriesT]:
    out = [SeriesT.scalar(1, A.order)]
    for _ in range(d):
        out.append(out[-1] * A)
    return out


def guess_algebraic(A: SeriesT, dx: int, dt: int, dY: int, confirm: Optional[SeriesT] = None) -> GuessReport:
    """Solve for sum p_ijk x^i t^j Y^k vanishing at Y = A modulo t^(A.order+1)."""
    N = A.order
    if A.coeffs and any(c.min_deg is not None and c.min_deg < 0 for c in A.coeffs):
        raise ValueError("guessing needs non-negative x-exponents")
    unknowns = [(i, j, k) for k in range(dY + 1) for j in range(dt + 1) for i in range(dx + 1)]
    powers = _powers(A, dY)
    columns: List[Dict[Tuple[int, int], object]] = []
    monomials = set()
    for i, j, k in unknowns:
        col = {}
        for n in range(0, N + 1 - j):
            for e, c in powers[k].coeffs[n].coeffs.items():
                col[(e + i, n + j)] = c
        columns.append(col)
        monomials.update(col)
    rows_idx = sorted(monomials, key=lambda m: (m[1], m[0]))
    if len(rows_idx) < len(unknowns):
        raise UnderdeterminedSystem(
            f"{len(rows_idx)} equations for {len(unknowns)} unknowns; raise the truncation order"
        )
    matrix = [[col.get(m, 0) for col in columns] for m in rows_idx]
    basis = nullspace(matrix, len(unknowns))
    report = GuessReport(None, len(basis), N, N, len(rows_idx), len(unknowns))
    if not basis:
        return report
    vec = min(basis, key=lambda v: sum(1 for c in v if c))
    P = normalize(MPoly(TRI, {u: c for u, c in zip(unknowns, vec)}))
    if not evaluate_at_series(P, A).is_zero():
        raise AssertionError("nullspace vector does not annihilate the data")
    report.candidate = P
    if confirm is not None:
        if not evaluate_at_series(P, confirm).is_zero():
            raise SeedMismatch(f"candidate fails at order {confirm.order}")
        report.confirmed_to = confirm.order
    return report


def series_root(P: MPoly, seed: SeriesT, N: int) -> SeriesT:
    """Lift ``seed`` to the root of P known modulo t^(N+1) by Newton iteration."""
    if not evaluate_at_series(P, seed).is_zero():
        raise SeedMismatch("seed does not annihilate P to its own order")
    dP = P.derivative("Y")
    lead = evaluate_at_series(dP, seed.truncate(0)).coeffs[0]
    if not lead.is_monomial():
        raise SingularRoot(f"dP/dY at the seed has constant term {lead.to_str()}")
    y = seed.truncate(min(seed.order, N))
    prec = y.order
    while prec < N:
        prec = min(2 * prec + 1, N)
        y = y.pad(prec)
        r = evaluate_at_series(P, y)
        d = evaluate_at_series(dP, y)
        y = y - r * series_inverse(d)
    return y


# ---------------------------------------------------------------------------
# closure properties via resultants


def resultant(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Res_var(f, g) as the Sylvester determinant, evaluated fraction-free."""
    fc = f.coeff_list(var)
    gc = g.coeff_list(var)
    m, n = len(fc) - 1, len(gc) - 1
    if m < 0 or n < 0:
        raise ZeroInput("resultant of the zero polynomial")
    size = m + n
    if size == 0:
        return MPoly.const(f.vars, 1)
    zero = MPoly(f.vars)
    rows = []
    for r in range(n):
        row = [zero] * size
        for i, c in enumerate(reversed(fc)):
            row[r + i] = c
        rows.append(row)
    for r in range(m):
        row = [zero] * size
        for i, c in enumerate(reversed(gc)):
            row[r + i] = c
        rows.append(row)
    return bareiss_det(rows)


def constant_annihilator(c: MPoly) -> MPoly:
    """Y - c for a polynomial c in (x, t)."""
    if c.degree("Y") > 0:
        raise ValueError("constant must not involve Y")
    return MPoly.gen(TRI, "Y") - c


def negate_annihilator(p: MPoly) -> MPoly:
    """Annihilator of -y given one of y."""
    return p.substitute("Y", -MPoly.gen(TRI, "Y"))


def annihilator_combine(p1: MPoly, p2: MPoly, mode: str) -> MPoly:
    """Polynomial in Y vanishing at y1 + y2 (``sum``) or y1*y2 (``product``)."""
    if p1.is_zero() or p2.is_zero():
        raise ZeroInput("annihilator_combine needs nonzero polynomials")
    a = p1.embed(_V4, rename={"Y": "y1"})
    Y = MPoly.gen(_V4, "Y")
    y1 = MPoly.gen(_V4, "y1")
    b = p2.embed(_V4)
    if mode == "sum":
        b = b.substitute("Y", Y - y1)
    elif mode == "product":
        d = b.degree("Y")
        cs = b.coeff_list("Y")
        b = sum((c * Y ** k * y1 ** (d - k) for k, c in enumerate(cs)), MPoly(_V4))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    res = resultant(a, b, "y1").drop_var("y1")
    if res.is_zero():
        raise AssertionError("resultant vanished; inputs share a factor")
    return normalize(strip_monomial_content(res))


def strip_monomial_content(P: MPoly) -> MPoly:
    """Divide out the largest monomial in x and t dividing every term."""
    ix, it = P.index("x"), P.index("t")
    mx = min(e[ix] for e in P.terms)
    mt = min(e[it] for e in P.terms)
    if not (mx or mt):
        return P
    out = {}
    for e, c in P.terms.items():
        e2 = list(e)
        e2[ix] -= mx
        e2[it] -= mt
        out[tuple(e2)] = c
    return MPoly(P.vars, out)


def pseudo_remainder(A: MPoly, B: MPoly, var: str = "Y") -> MPoly:
    """prem(A, B) in Q[other vars][var]."""
    db = B.degree(var)
    lcB = B.coeff_list(var)[-1]
    v = MPoly.gen(A.vars, var)
    R = A
    while not R.is_zero() and R.degree(var) >= db:
        dr = R.degree(var)
        lcR = R.coeff_list(var)[-1]
        R = R * lcB - lcR * v ** (dr - db) * B
    return R


def divides(B: MPoly, A: MPoly, var: str = "Y") -> bool:
    """True when B divides A over the rational functions in the other variables."""
    return pseudo_remainder(A, B, var).is_zero()


def split_y_power(A: MPoly) -> Tuple[int, MPoly]:
    """A = Y^m * C with C(Y=0) != 0."""
    cs = A.coeff_list("Y")
    m = next(k for k, c in enumerate(cs) if not c.is_zero())
    return m, MPoly.from_coeff_list(cs[m:], "Y")


# ---------------------------------------------------------------------------
# certificate


@dataclass
class Certificate:
    ok: bool
    annihilator: MPoly
    cofactor: MPoly
    y_multiplicity: int
    residual_zero: bool
    first_separating_order: Optional[int]
    required_order: int
    check_order: int
    notes: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def kernel_residual_annihilator(P: MPoly) -> MPoly:
    """Annihilator of x(1 - t(x + 1/x)) F - x + t F(0;t) for any root F of P."""
    K = parse_poly("x - t*x^2 - t", TRI)
    x = MPoly.gen(TRI, "x")
    t = MPoly.gen(TRI, "t")
    a_KF = annihilator_combine(P, constant_annihilator(K), "product")
    a_KF_x = annihilator_combine(a_KF, constant_annihilator(-x), "sum")
    P0 = P.evaluate("x", 0)
    if P0.degree("Y") < 1:
        raise ValueError("P(0, t, Y) does not involve Y; no annihilator for F(0;t)")
    a_tF0 = annihilator_combine(P0, constant_annihilator(t), "product")
    return annihilator_combine(a_KF_x, a_tF0, "sum")


def _excursion_residual_annihilator(P: MPoly) -> MPoly:
    """Annihilator of t F0 - x0, where x0 is the power-series root of t Y^2 - Y + t."""
    t = MPoly.gen(TRI, "t")
    a_tF0 = annihilator_combine(P, constant_annihilator(t), "product")
    kernel_in_Y = parse_poly("t*Y^2 - Y + t", TRI)
    return annihilator_combine(a_tF0, negate_annihilator(kernel_in_Y), "sum")


def kernel_certificate(P: MPoly, N: int, seed: Optional[SeriesT] = None) -> Certificate:
    """Certify that the root of P extending ``seed`` (default 1) solves the kernel equation.

    For x-free P the checked relation is the x = x0 specialisation
    t F(0;t) = x0(t).
    """
    seed = seed if seed is not None else SeriesT.scalar(1, 0)
    x_free = P.degree("x") <= 0
    if x_free:
        A = _excursion_residual_annihilator(P)
    else:
        A = kernel_residual_annihilator(P)
    m, C = split_y_power(A)
    c0 = C.coeff_list("Y")[0]
    required = min(e[1] for e in c0.terms)  # t-valuation of C(0)

    try:
        F = series_root(P, seed, N + 1)
    except SeedMismatch:
        return Certificate(False, A, C, m, False, None, required, N, ["seed is not a root of P"])
    if x_free:
        x0 = series_root(parse_poly("t*Y^2 - Y + t", TRI), SeriesT.scalar(0, 0), N + 1)
        R = (F.shift_t(1) - x0).truncate(N)
    else:
        F = F.truncate(N)
        KF = F * LaurentPoly({1: 1}) - (F * LaurentPoly({2: 1, 0: 1})).shift_t(1).truncate(N)
        R = KF - SeriesT.scalar(LaurentPoly({1: 1}), N) + F.x_coefficient(0).shift_t(1).truncate(N)
    residual_zero = R.is_zero()
    notes = []
    if not residual_zero:
        notes.append(f"residual nonzero at t^{valuation(R)}")
        return Certificate(False, A, C, m, False, None, required, N, notes)
    if m == 0:
        notes.append("annihilator has no factor Y")
        return Certificate(False, A, C, m, True, None, required, N, notes)
    sep = valuation(evaluate_at_series(C, R))
    if sep == INF:
        raise InconclusiveOrder(
            f"cofactor vanishes through t^{N}; need N >= {required}"
        )
    return Certificate(True, A, C, m, True, int(sep), required, N, notes)


def verify_kernel_solution(P: MPoly, N: int, seed: Optional[SeriesT] = None) -> bool:
    return kernel_certificate(P, N, seed).ok


KERNEL_MINPOLY = "1 - (1 - 2*x*t)*Y - (x*t - x^2*t^2 - t^2)*Y^2"
EXCURSION_POLY = "1 - Y + t^2*Y^2"
