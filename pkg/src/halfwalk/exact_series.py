"""Laurent polynomials in x and truncated power series in t over the rationals.

Scalars are Python ints or :class:`fractions.Fraction` values; a Fraction
with denominator 1 is always collapsed to an int so that integer-valued
series (walk counts) stay on the fast int path.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

ExactRational = Union[int, Fraction]

INF = math.inf


class NotInvertible(ArithmeticError):
    pass


class BadConstantTerm(ArithmeticError):
    pass


def rat(value) -> ExactRational:
    """Coerce ``value`` to an exact rational, collapsing integral fractions."""
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return rat(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return rat(Fraction(value))
    raise TypeError(f"not an exact rational: {value!r}")


def rdiv(a: ExactRational, b: ExactRational) -> ExactRational:
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return rat(Fraction(a) / b)


def rat_str(q: ExactRational) -> str:
    q = rat(q)
    if isinstance(q, int):
        return str(q)
    return f"{q.numerator}/{q.denominator}"


def _collapse(v):
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v


class LaurentPoly:
    """Finite-support Laurent polynomial in x.

    ``coeffs`` maps integer exponents to nonzero rationals.  Instances are
    treated as immutable.
    """

    __slots__ = ("coeffs", "min_deg", "max_deg")

    def __init__(self, coeffs: Optional[Mapping[int, ExactRational]] = None, *, _trusted: bool = False):
        if _trusted:
            c = coeffs  # caller guarantees pruned, collapsed values
        else:
            c = {}
            if coeffs:
                for e, v in coeffs.items():
                    v = rat(v)
                    if v:
                        c[int(e)] = v
        self.coeffs: Dict[int, ExactRational] = c
        if c:
            self.min_deg: Optional[int] = min(c)
            self.max_deg: Optional[int] = max(c)
        else:
            self.min_deg = None
            self.max_deg = None

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, c, e: int) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def _from_raw(cls, raw: Dict[int, ExactRational]) -> "LaurentPoly":
        return cls({e: _collapse(v) for e, v in raw.items() if v}, _trusted=True)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ({0: rat(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_str()})"

    def items(self) -> List[Tuple[int, ExactRational]]:
        return sorted(self.coeffs.items())

    def __getitem__(self, e: int) -> ExactRational:
        return self.coeffs.get(e, 0)

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def is_constant(self) -> bool:
        return not self.coeffs or (len(self.coeffs) == 1 and 0 in self.coeffs)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly._from_raw(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -v for e, v in self.coeffs.items()}, _trusted=True)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not other.coeffs:
            return self
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            out[e] = out.get(e, 0) - v
        return LaurentPoly._from_raw(out)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        if len(a) > len(b):
            a, b = b, a
        out: Dict[int, ExactRational] = {}
        get = out.get
        for ea, va in a.items():
            for eb, vb in b.items():
                e = ea + eb
                out[e] = get(e, 0) + va * vb
        return LaurentPoly._from_raw(out)

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = rat(c)
        if not c:
            return ZERO_POLY
        if c == 1:
            return self
        return LaurentPoly({e: _collapse(v * c) for e, v in self.coeffs.items()}, _trusted=True)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by x**k."""
        if k == 0:
            return self
        return LaurentPoly({e + k: v for e, v in self.coeffs.items()}, _trusted=True)

    def nonneg_part(self) -> "LaurentPoly":
        if self.min_deg is None or self.min_deg >= 0:
            return self
        return LaurentPoly({e: v for e, v in self.coeffs.items() if e >= 0}, _trusted=True)

    def substitute_inverse(self) -> "LaurentPoly":
        """x -> 1/x."""
        return LaurentPoly({-e: v for e, v in self.coeffs.items()}, _trusted=True)

    def evaluate(self, x) -> ExactRational:
        return rat(sum(Fraction(v) * Fraction(x) ** e for e, v in self.coeffs.items()))

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, v in self.items():
            if e == 0:
                parts.append(rat_str(v))
                continue
            mono = var if e == 1 else f"{var}^{e}"
            if v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{rat_str(v)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly({0: 1})


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def _as_poly(c) -> LaurentPoly:
    if isinstance(c, LaurentPoly):
        return c
    return LaurentPoly.const(c)


class SeriesT:
    """Power series in t, exact modulo t**(order+1), with Laurent-in-x coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: Optional[int] = None):
        cs = [_as_poly(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        else:
            cs.extend([ZERO_POLY] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs: Tuple[LaurentPoly, ...] = tuple(cs)

    @classmethod
    def scalar(cls, c, order: int) -> "SeriesT":
        return cls([c], order)

    @classmethod
    def from_scalars(cls, values: Sequence, order: Optional[int] = None) -> "SeriesT":
        return cls([LaurentPoly.const(v) for v in values], order)

    @classmethod
    def t_monomial(cls, coeff, k: int, order: int) -> "SeriesT":
        cs = [ZERO_POLY] * (order + 1)
        if k <= order:
            cs[k] = _as_poly(coeff)
        return cls(cs, order)

    def __getitem__(self, n: int) -> LaurentPoly:
        return self.coeffs[n]

    def __iter__(self) -> Iterator[LaurentPoly]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return self.order + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, SeriesT):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"SeriesT(order={self.order}, {self.to_str()})"

    def to_str(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if not c:
                continue
            body = c.to_str()
            if n == 0:
                parts.append(body)
            else:
                tm = "t" if n == 1 else f"t^{n}"
                if len(c.coeffs) > 1:
                    parts.append(f"({body})*{tm}")
                elif body in ("1", "-1"):
                    parts.append(body[:-1] + tm)
                else:
                    parts.append(f"{body}*{tm}")
        s = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return f"{s} + O(t^{self.order + 1})"

    def is_x_free(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)

    def scalars(self) -> List[ExactRational]:
        """Coefficients as rationals; requires x-free coefficients."""
        if not self.is_x_free():
            raise ValueError("series has x-dependent coefficients")
        return [c[0] for c in self.coeffs]

    def truncate(self, order: int) -> "SeriesT":
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return SeriesT(self.coeffs[: order + 1], order)

    def pad(self, order: int) -> "SeriesT":
        """Same coefficients, order raised by padding zeros (caller vouches for them)."""
        return SeriesT(self.coeffs, order)

    def __add__(self, other) -> "SeriesT":
        other = _as_series(other, self.order)
        n = min(self.order, other.order)
        return SeriesT([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self) -> "SeriesT":
        return SeriesT([-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> "SeriesT":
        other = _as_series(other, self.order)
        n = min(self.order, other.order)
        return SeriesT([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n)

    def __rsub__(self, other) -> "SeriesT":
        return _as_series(other, self.order) - self

    def __mul__(self, other) -> "SeriesT":
        if isinstance(other, LaurentPoly):
            return SeriesT([c * other for c in self.coeffs], self.order)
        if not isinstance(other, SeriesT):
            c = rat(other)
            return SeriesT([p.scale(c) for p in self.coeffs], self.order)
        n = min(self.order, other.order)
        a = [(i, c) for i, c in enumerate(self.coeffs[: n + 1]) if c]
        b = [(i, c) for i, c in enumerate(other.coeffs[: n + 1]) if c]
        acc: List[Dict[int, ExactRational]] = [dict() for _ in range(n + 1)]
        for i, ca in a:
            for j, cb in b:
                k = i + j
                if k > n:
                    break
                target = acc[k]
                get = target.get
                for ea, va in ca.coeffs.items():
                    for eb, vb in cb.coeffs.items():
                        e = ea + eb
                        target[e] = get(e, 0) + va * vb
        return SeriesT([LaurentPoly._from_raw(d) for d in acc], n)

    __rmul__ = __mul__

    def shift_t(self, k: int) -> "SeriesT":
        """Multiply by t**k (k >= 0); the known order grows by k."""
        if k < 0:
            raise ValueError("use divide_t for negative shifts")
        return SeriesT([ZERO_POLY] * k + list(self.coeffs), self.order + k)

    def divide_t(self, k: int) -> "SeriesT":
        """Exact division by t**k; the first k coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise ArithmeticError(f"series not divisible by t^{k}")
        if k > self.order:
            raise ArithmeticError("division exhausts the known coefficients")
        return SeriesT(self.coeffs[k:], self.order - k)

    def x_shift(self, k: int) -> "SeriesT":
        return SeriesT([c.shift(k) for c in self.coeffs], self.order)

    def map_coeffs(self, fn) -> "SeriesT":
        return SeriesT([fn(c) for c in self.coeffs], self.order)

    def x_coefficient(self, e: int) -> "SeriesT":
        """[x^e] as an x-free series."""
        return SeriesT([LaurentPoly.const(c[e]) for c in self.coeffs], self.order)

    def substitute_x(self, x) -> "SeriesT":
        return SeriesT([LaurentPoly.const(c.evaluate(x)) for c in self.coeffs], self.order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def _as_series(value, order: int) -> SeriesT:
    if isinstance(value, SeriesT):
        return value
    return SeriesT.scalar(value, order)


def series_arith(A: SeriesT, B: SeriesT, op: str) -> SeriesT:
    if op == "add":
        return A + B
    if op == "sub":
        return A - B
    if op == "mul":
        return A * B
    raise ValueError(f"unknown op {op!r}")


def series_inverse(A: SeriesT) -> SeriesT:
    """Reciprocal of ``A`` to its own order.

    The constant term must be a single monomial c*x^k; the reciprocal of
    such a term is (1/c)*x^-k, which keeps every coefficient a Laurent
    polynomial.
    """
    a0 = A.coeffs[0]
    if not a0.is_monomial():
        raise NotInvertible(f"constant term {a0.to_str()} is not a nonzero monomial")
    (e0, c0), = a0.coeffs.items()
    inv0 = LaurentPoly({-e0: rdiv(1, c0)})
    N = A.order
    nz = [(k, A.coeffs[k]) for k in range(1, N + 1) if A.coeffs[k]]
    out = [inv0]
    for n in range(1, N + 1):
        acc: Dict[int, ExactRational] = {}
        get = acc.get
        for k, ak in nz:
            if k > n:
                break
            bk = out[n - k]
            if not bk:
                continue
            for ea, va in ak.coeffs.items():
                for eb, vb in bk.coeffs.items():
                    e = ea + eb
                    acc[e] = get(e, 0) + va * vb
        s = LaurentPoly._from_raw(acc)
        out.append((s * inv0).scale(-1))
    return SeriesT(out, N)


def series_sqrt(A: SeriesT) -> SeriesT:
    """Square root with constant term 1, by Newton iteration on Y^2 - A."""
    if not A.is_x_free():
        raise BadConstantTerm("series_sqrt needs x-free coefficients")
    if A.coeffs[0] != ONE_POLY:
        raise BadConstantTerm(f"constant term must be 1, got {A.coeffs[0].to_str()}")
    N = A.order
    y = SeriesT.scalar(1, 0)
    prec = 0
    while prec < N:
        prec = min(2 * prec + 1, N)
        y = y.pad(prec)
        a = A.truncate(prec)
        # y <- (y + a/y) / 2
        y = (y + a * series_inverse(y)) * Fraction(1, 2)
    return y.pad(N) if y.order < N else y


def nonneg_part(A: SeriesT) -> SeriesT:
    return SeriesT([c.nonneg_part() for c in A.coeffs], A.order)


def valuation(A) -> Union[int, float]:
    """Least n with a nonzero stored coefficient; ``math.inf`` for the zero series."""
    if isinstance(A, LaurentSeriesT):
        return A.valuation if not A.is_zero() else INF
    for n, c in enumerate(A.coeffs):
        if c:
            return n
    return INF


class LaurentSeriesT:
    """Series sum_{n=v}^{N} c_n t^n, known modulo t^(N+1); v may be negative."""

    __slots__ = ("valuation", "order", "coeffs")

    def __init__(self, valuation: int, coeffs: Sequence, order: Optional[int] = None):
        cs = [_as_poly(c) for c in coeffs]
        if order is None:
            order = valuation + len(cs) - 1
        if order < valuation - 1:
            raise ValueError("order below valuation")
        cs = cs[: order - valuation + 1]
        cs.extend([ZERO_POLY] * (order - valuation + 1 - len(cs)))
        # normalise so that the first stored coefficient is nonzero
        lead = 0
        while lead < len(cs) and not cs[lead]:
            lead += 1
        if lead == len(cs):
            self.valuation = order + 1
            self.coeffs: Tuple[LaurentPoly, ...] = ()
        else:
            self.valuation = valuation + lead
            self.coeffs = tuple(cs[lead:])
        self.order = order

    @classmethod
    def from_series(cls, S: SeriesT) -> "LaurentSeriesT":
        return cls(0, S.coeffs, S.order)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, n: int) -> LaurentPoly:
        if n > self.order:
            raise IndexError("coefficient beyond known order")
        i = n - self.valuation
        if i < 0:
            return ZERO_POLY
        return self.coeffs[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeriesT):
            return NotImplemented
        return (self.order, self.valuation, self.coeffs) == (other.order, other.valuation, other.coeffs)

    def __repr__(self) -> str:
        terms = [f"({c.to_str()})*t^{self.valuation + i}" for i, c in enumerate(self.coeffs) if c]
        return f"LaurentSeriesT({' + '.join(terms) or '0'} + O(t^{self.order + 1}))"

    def __add__(self, other: "LaurentSeriesT") -> "LaurentSeriesT":
        N = min(self.order, other.order)
        v = min(self.valuation, other.valuation)
        return LaurentSeriesT(v, [self[n] + other[n] for n in range(v, N + 1)], N)

    def __sub__(self, other: "LaurentSeriesT") -> "LaurentSeriesT":
        N = min(self.order, other.order)
        v = min(self.valuation, other.valuation)
        return LaurentSeriesT(v, [self[n] - other[n] for n in range(v, N + 1)], N)

    def __mul__(self, other: "LaurentSeriesT") -> "LaurentSeriesT":
        if self.is_zero() or other.is_zero():
            v = self.valuation + other.valuation
            N = min(self.order + other.valuation, other.order + self.valuation)
            return LaurentSeriesT(v, [], N)
        va, vb = self.valuation, other.valuation
        N = min(self.order + vb, other.order + va)
        a = SeriesT(self.coeffs, self.order - va)
        b = SeriesT(other.coeffs, other.order - vb)
        prod = a * b
        return LaurentSeriesT(va + vb, prod.coeffs[: N - va - vb + 1], N)

    def inverse(self) -> "LaurentSeriesT":
        if self.is_zero():
            raise NotInvertible("zero series")
        v = self.valuation
        rel = SeriesT(self.coeffs, self.order - v)
        inv = series_inverse(rel)
        return LaurentSeriesT(-v, inv.coeffs, -v + inv.order)

    def to_series(self) -> SeriesT:
        if self.valuation < 0:
            raise ValueError("negative valuation; not a power series")
        return SeriesT([self[n] for n in range(0, self.order + 1)], self.order)


__all__ = [
    "ExactRational",
    "INF",
    "LaurentPoly",
    "LaurentSeriesT",
    "NotInvertible",
    "BadConstantTerm",
    "SeriesT",
    "ZERO_POLY",
    "ONE_POLY",
    "laurent_arith",
    "nonneg_part",
    "rat",
    "rat_str",
    "rdiv",
    "series_arith",
    "series_inverse",
    "series_sqrt",
    "valuation",
]
