"""Algebraic equation -> linear ODE -> P-recurrence, and fast exact unrolling.

Conventions: a LinODE stores p_0..p_d with p_0 multiplying the d-th
derivative; a PRec stores q_0..q_r with q_0 multiplying f_{n+r}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Sequence, Tuple

from .exact_series import ExactRational, rat, rdiv
from .polys import MPoly, RatFunc, UPoly, primitive_tuple, upoly_lcm


class NotSquarefree(ValueError):
    pass


class DependenceNotFound(RuntimeError):
    pass


class Inhomogeneous(ValueError):
    pass


class LeadingCoeffVanishes(ArithmeticError):
    def __init__(self, n: int):
        super().__init__(f"leading coefficient vanishes at n = {n}")
        self.n = n


class ZeroDenominator(ArithmeticError):
    def __init__(self, k: int):
        super().__init__(f"denominator factor vanishes at k = {k}")
        self.k = k


@dataclass(frozen=True)
class LinODE:
    coeffs: Tuple[UPoly, ...]
    inhomogeneous: UPoly = UPoly()

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def homogeneous(self) -> bool:
        return self.inhomogeneous.is_zero()

    def normalized(self) -> "LinODE":
        polys = primitive_tuple(list(self.coeffs) + [self.inhomogeneous])
        return LinODE(tuple(polys[:-1]), polys[-1])

    def apply(self, values: Sequence[ExactRational]) -> List[ExactRational]:
        """Coefficients of L(f) - inhomogeneous for f = sum values[n] t^n.

        Only the first len(values) - order entries are reliable.
        """
        N = len(values)
        d = self.order
        out = [Fraction(0)] * N
        deriv = [Fraction(v) for v in values]
        derivs = [deriv]
        for _ in range(d):
            deriv = [(k + 1) * deriv[k + 1] for k in range(len(deriv) - 1)]
            derivs.append(deriv)
        for i, p in enumerate(self.coeffs):
            fd = derivs[d - i]
            for a, c in enumerate(p.coeffs):
                if not c:
                    continue
                for k, v in enumerate(fd):
                    if a + k < N:
                        out[a + k] += c * v
        for a, c in enumerate(self.inhomogeneous.coeffs):
            if a < N:
                out[a] -= c
        return [rat(v) for v in out[: max(N - d, 0)]]

    def to_json(self) -> dict:
        from .serialize import upoly_to_json

        return {
            "order": self.order,
            "coeffs": [upoly_to_json(p) for p in self.coeffs],
            "inhomogeneous": upoly_to_json(self.inhomogeneous),
        }

    def to_str(self, var: str = "t", fn: str = "F") -> str:
        parts = []
        for i, p in enumerate(self.coeffs):
            if p.is_zero():
                continue
            b = self.order - i
            dname = fn + "'" * b if b <= 3 else f"{fn}^({b})"
            parts.append(f"({p.to_str(var)})*{dname}")
        return " + ".join(parts) + f" = {self.inhomogeneous.to_str(var)}"


@dataclass(frozen=True)
class PRec:
    coeffs: Tuple[UPoly, ...]

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("a recurrence needs order r >= 1")
        if self.coeffs[0].is_zero():
            raise ValueError("q_0 must be a nonzero polynomial")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def normalized(self) -> "PRec":
        return PRec(tuple(primitive_tuple(list(self.coeffs))))

    def residual(self, values: Sequence[ExactRational], n: int) -> ExactRational:
        r = self.order
        return rat(sum(q(n) * values[n + r - j] for j, q in enumerate(self.coeffs)))

    def to_json(self) -> dict:
        from .serialize import upoly_to_json

        return {"order": self.order, "coeffs": [upoly_to_json(q) for q in self.coeffs]}

    def to_str(self, var: str = "n", fn: str = "f") -> str:
        parts = []
        r = self.order
        for j, q in enumerate(self.coeffs):
            if q.is_zero():
                continue
            s = r - j
            idx = var if s == 0 else f"{var}+{s}"
            parts.append(f"({q.to_str(var)})*{fn}({idx})")
        return " + ".join(parts) + " = 0"


# ---------------------------------------------------------------------------
# polynomials in Y over Q(t): lists of RatFunc, lowest degree first


def _trim(p: List[RatFunc]) -> List[RatFunc]:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _ydivmod(a: List[RatFunc], b: List[RatFunc]) -> Tuple[List[RatFunc], List[RatFunc]]:
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    q = [RatFunc(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(_trim(r)) >= len(b):
        r = _trim(r)
        k = len(r) - len(b)
        c = r[-1] / lb
        q[k] = c
        for j, bj in enumerate(b):
            r[k + j] = r[k + j] - c * bj
        r = r[:-1]
    return _trim(q), _trim(r)


def _ymul(a: List[RatFunc], b: List[RatFunc]) -> List[RatFunc]:
    if not a or not b:
        return []
    out = [RatFunc(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def _ysub(a: List[RatFunc], b: List[RatFunc]) -> List[RatFunc]:
    n = max(len(a), len(b))
    z = RatFunc(0)
    return _trim([(a[i] if i < len(a) else z) - (b[i] if i < len(b) else z) for i in range(n)])


def _yinverse_mod(a: List[RatFunc], m: List[RatFunc]) -> List[RatFunc]:
    """u with u*a = 1 mod m, via the extended Euclidean algorithm."""
    r0, r1 = _trim(m), _trim(a)
    s0, s1 = [], [RatFunc(1)]
    while r1 and len(r1) > 1:
        q, r = _ydivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _ysub(s0, _ymul(q, s1))
    if not r1:
        raise NotSquarefree("dP/dY is not invertible modulo P")
    c = r1[0]
    return _ydivmod([x / c for x in s1], m)[1]


def _ypoly_from_mpoly(P0: MPoly) -> List[RatFunc]:
    if "x" in P0.vars and P0.degree("x") > 0:
        raise ValueError("P0 must not involve x")
    coeffs = P0.coeff_list("Y")
    it = P0.index("t")
    out = []
    for c in coeffs:
        d = max((e[it] for e in c.terms), default=-1)
        cs = [0] * (d + 1)
        for e, v in c.terms.items():
            cs[e[it]] = v
        out.append(RatFunc(UPoly(cs)))
    return _trim(out)


def _ygcd_degree(a: List[RatFunc], b: List[RatFunc]) -> int:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _ydivmod(a, b)[1]
    return len(a) - 1


def _field_kernel(cols: List[List[RatFunc]]) -> List[List[RatFunc]]:
    """Kernel of the matrix with the given columns, over Q(t)."""
    nrows = len(cols[0])
    ncols = len(cols)
    m = [[cols[j][i] for j in range(ncols)] for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = RatFunc(1) / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [RatFunc(0)] * ncols
        v[f] = RatFunc(1)
        for row, pc in enumerate(pivots):
            v[pc] = -m[row][f]
        basis.append(v)
    return basis


def first_relation(P0: MPoly) -> LinODE:
    """Lowest-order linear relation among 1, F, F', F'', ... for a root F of P0."""
    P = _ypoly_from_mpoly(P0)
    d = len(P) - 1
    if d < 1:
        raise ValueError("P0 must have positive degree in Y")
    PY = _trim([RatFunc(k) * c for k, c in enumerate(P)][1:])
    if _ygcd_degree(P, PY) > 0:
        raise NotSquarefree("P0 shares a factor with its Y-derivative")
    Pt = _trim([c.derivative() for c in P])
    u = _yinverse_mod(PY, P)
    Yp = _ydivmod(_ymul(u, Pt), P)[1]
    Yp = [-c for c in Yp]

    def D(b: List[RatFunc]) -> List[RatFunc]:
        # (sum b_j Y^j)' = sum b_j' Y^j + sum j b_j Y^(j-1) Y'
        out = _trim([c.derivative() for c in b])
        for j in range(1, len(b)):
            out = _ysub(out, _ymul([RatFunc(0)] * (j - 1) + [-RatFunc(j) * b[j]], Yp))
        return _ydivmod(out, P)[1]

    def vec(b: List[RatFunc]) -> List[RatFunc]:
        b = _trim(b)
        return b + [RatFunc(0)] * (d - len(b))

    tower = [[RatFunc(1)], [RatFunc(0), RatFunc(1)] if d > 1 else _ydivmod([RatFunc(0), RatFunc(1)], P)[1]]
    for m in range(0, d + 1):
        if m > 0:
            tower.append(D(tower[-1]))
        ker = _field_kernel([vec(b) for b in tower])
        if not ker:
            continue
        v = ker[0]
        den = reduce(upoly_lcm, (c.den for c in v), UPoly([1]))
        polys = [(c * RatFunc(den)).num for c in v]
        const, a = polys[0], polys[1:]
        # sum_b a_b F^(b) = -const
        return LinODE(tuple(reversed(a)), -const).normalized()
    raise DependenceNotFound("no linear relation up to order deg_Y(P0)")


def homogenize(L: LinODE) -> LinODE:
    """Differentiate L/c once to kill a nonzero right-hand side c."""
    if L.homogeneous:
        return L.normalized()
    c = L.inhomogeneous
    dc = c.derivative()
    d = L.order
    a = list(reversed(L.coeffs))  # a[b] multiplies F^(b)
    new = [UPoly()] * (d + 2)
    for b, ab in enumerate(a):
        new[b] = new[b] + ab.derivative() * c - ab * dc
        new[b + 1] = new[b + 1] + ab * c
    return LinODE(tuple(reversed(new))).normalized()


def algebraic_to_ode(P0: MPoly) -> LinODE:
    return homogenize(first_relation(P0))


def ode_to_rec(L: LinODE) -> PRec:
    """Coefficient recurrence of a homogeneous ODE, valid for all n >= 0."""
    if not L.homogeneous:
        raise Inhomogeneous("ode_to_rec needs a homogeneous equation")
    d = L.order
    Q: Dict[int, UPoly] = {}
    n = UPoly.var()
    for i, p in enumerate(L.coeffs):
        b = d - i
        for a, c in enumerate(p.coeffs):
            if not c:
                continue
            # [t^n] t^a F^(b) = (n-a+1)...(n-a+b) f_{n-a+b}
            rising = UPoly([c])
            for k in range(1, b + 1):
                rising = rising * (n + (k - a))
            s = b - a
            Q[s] = Q.get(s, UPoly()) + rising
    Q = {s: q for s, q in Q.items() if q}
    if not Q:
        raise ValueError("operator annihilates every sequence")
    smin, smax = min(Q), max(Q)
    coeffs = [Q.get(s, UPoly()).compose_affine(1, -smin) for s in range(smax, smin - 1, -1)]
    return PRec(tuple(primitive_tuple(coeffs)))


def even_part(R: PRec) -> PRec:
    """Recurrence for g(m) = f(2m) when only even shifts occur."""
    r = R.order
    if r % 2 or any(q for j, q in enumerate(R.coeffs) if j % 2):
        raise ValueError("recurrence has odd shifts")
    return PRec(tuple(q.compose_affine(2, 0) for q in R.coeffs[::2]))


def rec_unroll(R: PRec, init: Sequence[ExactRational], N: int) -> List[ExactRational]:
    r = R.order
    if len(init) != r:
        raise ValueError(f"need {r} initial values, got {len(init)}")
    q0 = R.coeffs[0]
    for n in range(0, N - r + 1):
        if q0(n) == 0:
            raise LeadingCoeffVanishes(n)
    vals = [rat(v) for v in init]
    rest = [(j, q) for j, q in enumerate(R.coeffs) if j and q]
    for n in range(0, N - r + 1):
        s = 0
        for j, q in rest:
            v = vals[n + r - j]
            if v:
                s += q(n) * v
        vals.append(rdiv(-s, q0(n)) if isinstance(s, int) else rat(-Fraction(s) / q0(n)))
    return vals[: N + 1]


def first_order_product(R: PRec, g0: ExactRational, n: int) -> ExactRational:
    """g0 * prod_{k<n} (-q_1(k)/q_0(k))."""
    if R.order != 1:
        raise ValueError("first_order_product needs an order-1 recurrence")
    num, den = Fraction(g0), 1
    q0, q1 = R.coeffs
    for k in range(n):
        dk = q0(k)
        if dk == 0:
            raise ZeroDenominator(k)
        num *= -q1(k)
        den *= dk
    return rat(num / den)


def convolution_f0(N: int) -> List[int]:
    """f(0;0) = 1, f(0;1) = 0, f(0;n) = sum_{k<=n-2} f(0;k) f(0;n-2-k)."""
    f = [1, 0][: N + 1]
    for n in range(2, N + 1):
        f.append(sum(f[k] * f[n - 2 - k] for k in range(n - 1)))
    return f
