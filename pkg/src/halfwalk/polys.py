"""Small exact polynomial toolkit: dense univariate, sparse multivariate, rational functions.

Only what the guessing, D-finite and asymptotic code needs; nothing here is
tuned for large degrees.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exact_series import ExactRational, LaurentPoly, SeriesT, rat, rat_str, rdiv


def _frac_content(values: Iterable[ExactRational]) -> Fraction:
    """Positive rational c with values/c integral and coprime."""
    vals = [Fraction(v) for v in values if v]
    if not vals:
        return Fraction(1)
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (v.denominator for v in vals), 1)
    g = reduce(math.gcd, (abs(v.numerator * (den // v.denominator)) for v in vals), 0)
    return Fraction(g, den)


# ---------------------------------------------------------------------------
# univariate


class UPoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies var**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [rat(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: Tuple[ExactRational, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> "UPoly":
        return cls([c])

    @classmethod
    def var(cls) -> "UPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for zero

    def lc(self) -> ExactRational:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UPoly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UPoly({self.to_str()})"

    def __getitem__(self, i: int) -> ExactRational:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other) -> "UPoly":
        other = _up(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "UPoly":
        return self + (-_up(other))

    def __rsub__(self, other) -> "UPoly":
        return _up(other) - self

    def __mul__(self, other) -> "UPoly":
        other = _up(other)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UPoly":
        out = UPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return rat(acc) if isinstance(acc, (int, Fraction)) else acc

    def divmod(self, other: "UPoly") -> Tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return UPoly(), self
        q = [0] * (dq + 1)
        lc = other.lc()
        for k in range(dq, -1, -1):
            c = rdiv(r[k + other.degree], lc)
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= c * b
        return UPoly(q), UPoly(r[: other.degree])

    def __floordiv__(self, other) -> "UPoly":
        return self.divmod(_up(other))[0]

    def __mod__(self, other) -> "UPoly":
        return self.divmod(_up(other))[1]

    def exact_div(self, other: "UPoly") -> "UPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        return self.scale(rdiv(1, self.lc()))

    def scale(self, c) -> "UPoly":
        return UPoly([v * c for v in self.coeffs])

    def derivative(self) -> "UPoly":
        return UPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> Fraction:
        return _frac_content(self.coeffs)

    def primitive(self) -> "UPoly":
        """Integer coefficients, gcd 1, positive leading coefficient."""
        if self.is_zero():
            return self
        c = self.content()
        if self.lc() < 0:
            c = -c
        return self.scale(1 / c)

    def compose_affine(self, a, b) -> "UPoly":
        """p(a*var + b)."""
        out = UPoly()
        lin = UPoly([b, a])
        for c in reversed(self.coeffs):
            out = out * lin + UPoly([c])
        return out

    def to_str(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(rat_str(c))
                continue
            mono = var if i == 1 else f"{var}^{i}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{rat_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _up(v) -> UPoly:
    return v if isinstance(v, UPoly) else UPoly([v])


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    while b:
        a, b = b, a % b
    return a.monic()


def upoly_lcm(a: UPoly, b: UPoly) -> UPoly:
    if a.is_zero() or b.is_zero():
        return UPoly()
    return (a * b).exact_div(upoly_gcd(a, b)).monic()


def primitive_tuple(polys: Sequence[UPoly]) -> List[UPoly]:
    """Divide a family of polynomials by their common gcd and rational content.

    The sign is fixed so that the first nonzero polynomial has a positive
    leading coefficient.
    """
    nz = [p for p in polys if p]
    if not nz:
        return list(polys)
    g = reduce(upoly_gcd, nz)
    polys = [p.exact_div(g) if p else p for p in polys]
    c = _frac_content([c for p in polys for c in p.coeffs])
    first = next(p for p in polys if p)
    if first.lc() < 0:
        c = -c
    return [p.scale(1 / c) for p in polys]


class RatFunc:
    """Quotient of univariate polynomials, kept reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = _up(num)
        den = UPoly([1]) if den is None else _up(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = UPoly([1])
            else:
                g = upoly_gcd(num, den)
                num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc()
            if lc != 1:
                num, den = num.scale(rdiv(1, lc)), den.scale(rdiv(1, lc))
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        other = _rf(other)
        return self.num == other.num and self.den == other.den

    def __repr__(self) -> str:
        return f"RatFunc(({self.num.to_str()})/({self.den.to_str()}))"

    def __add__(self, other) -> "RatFunc":
        other = _rf(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> "RatFunc":
        return self + (-_rf(other))

    def __rsub__(self, other) -> "RatFunc":
        return _rf(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = _rf(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _rf(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return _rf(other) / self

    def derivative(self) -> "RatFunc":
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den)


def _rf(v) -> RatFunc:
    return v if isinstance(v, RatFunc) else RatFunc(_up(v))


# ---------------------------------------------------------------------------
# multivariate


class MPoly:
    """Sparse polynomial in a fixed tuple of named variables (non-negative exponents)."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[Tuple[int, ...], ExactRational]] = None):
        self.vars: Tuple[str, ...] = tuple(variables)
        t: Dict[Tuple[int, ...], ExactRational] = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                c = rat(c)
                if c:
                    e = tuple(e)
                    if len(e) != n or min(e, default=0) < 0:
                        raise ValueError(f"bad exponent {e} for variables {self.vars}")
                    t[e] = c
        self.terms = t

    # constructors -----------------------------------------------------
    @classmethod
    def const(cls, variables, c) -> "MPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def gen(cls, variables, name: str) -> "MPoly":
        e = [0] * len(variables)
        e[list(variables).index(name)] = 1
        return cls(variables, {tuple(e): 1})

    def _new(self, terms) -> "MPoly":
        out = MPoly.__new__(MPoly)
        out.vars = self.vars
        out.terms = {e: (c.numerator if type(c) is Fraction and c.denominator == 1 else c) for e, c in terms.items() if c}
        return out

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        return MPoly.const(self.vars, other)

    # basics -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MPoly[{','.join(self.vars)}]({self.to_str()})"

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MPoly":
        other = self._coerce(other)
        out: Dict[Tuple[int, ...], ExactRational] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        out = MPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "MPoly":
        return self._new({e: v * c for e, v in self.terms.items()})

    # structure --------------------------------------------------------
    def index(self, name: str) -> int:
        return self.vars.index(name)

    def degree(self, name: str) -> int:
        i = self.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def coeff_list(self, name: str) -> List["MPoly"]:
        """Coefficients with respect to ``name`` (that variable's exponent set to 0)."""
        i = self.index(name)
        d = self.degree(name)
        out: List[Dict] = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            k = e[i]
            out[k][e[:i] + (0,) + e[i + 1:]] = c
        return [self._new(t) for t in out]

    @classmethod
    def from_coeff_list(cls, coeffs: Sequence["MPoly"], name: str) -> "MPoly":
        variables = coeffs[0].vars
        i = variables.index(name)
        out: Dict = {}
        for k, p in enumerate(coeffs):
            for e, c in p.terms.items():
                e2 = e[:i] + (e[i] + k,) + e[i + 1:]
                out[e2] = out.get(e2, 0) + c
        return cls(variables, out)

    def leading_term(self) -> Tuple[Tuple[int, ...], ExactRational]:
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Quotient of an exact division (lexicographic leading terms)."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = other.leading_term()
        rem = dict(self.terms)
        q: Dict = {}
        while rem:
            e = max(rem)
            c = rem[e]
            de = tuple(a - b for a, b in zip(e, le))
            if min(de) < 0:
                raise ArithmeticError("inexact multivariate division")
            qc = rdiv(c, lc)
            q[de] = qc
            for eo, co in other.terms.items():
                e2 = tuple(a + b for a, b in zip(de, eo))
                v = rem.get(e2, 0) - qc * co
                if v:
                    rem[e2] = v
                else:
                    rem.pop(e2, None)
        return self._new(q)

    def derivative(self, name: str) -> "MPoly":
        i = self.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return self._new(out)

    def substitute(self, name: str, value: "MPoly") -> "MPoly":
        """Replace ``name`` by a polynomial in the same variables."""
        coeffs = self.coeff_list(name)
        out = MPoly(self.vars)
        for c in reversed(coeffs):
            out = out * value + c
        return out

    def embed(self, variables: Sequence[str], rename: Optional[Mapping[str, str]] = None) -> "MPoly":
        """Re-express over ``variables``; ``rename`` maps old names to new ones."""
        rename = rename or {}
        variables = tuple(variables)
        pos = [variables.index(rename.get(v, v)) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for p, k in zip(pos, e):
                ne[p] += k
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + c
        return MPoly(variables, out)

    def drop_var(self, name: str) -> "MPoly":
        if self.degree(name) > 0:
            raise ValueError(f"polynomial depends on {name}")
        i = self.index(name)
        return MPoly(self.vars[:i] + self.vars[i + 1:], {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    def evaluate(self, name: str, value) -> "MPoly":
        return self.substitute(name, MPoly.const(self.vars, value))

    def to_upoly(self) -> UPoly:
        if len(self.vars) != 1:
            raise ValueError("not univariate")
        d = self.degree(self.vars[0])
        cs = [0] * (d + 1)
        for (k,), c in self.terms.items():
            cs[k] = c
        return UPoly(cs)

    @classmethod
    def from_upoly(cls, p: UPoly, name: str) -> "MPoly":
        return cls((name,), {(i,): c for i, c in enumerate(p.coeffs)})

    def primitive(self, key=None) -> "MPoly":
        """Integer coefficients with gcd 1; leading coefficient under ``key`` positive."""
        if self.is_zero():
            return self
        c = _frac_content(self.terms.values())
        lead = max(self.terms, key=key) if key else max(self.terms)
        if self.terms[lead] < 0:
            c = -c
        return self.scale(1 / c)

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            if not mono:
                parts.append(rat_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{rat_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def mpoly_to_series(p: MPoly, order: int, x: str = "x", t: str = "t") -> SeriesT:
    """View a polynomial in (x, t) (other variables absent) as a SeriesT."""
    ix, it = p.index(x), p.index(t)
    for e in p.terms:
        if any(k for i, k in enumerate(e) if i not in (ix, it)):
            raise ValueError("polynomial involves variables other than x, t")
    cs: List[Dict[int, ExactRational]] = [dict() for _ in range(order + 1)]
    for e, c in p.terms.items():
        if e[it] <= order:
            cs[e[it]][e[ix]] = c
    return SeriesT([LaurentPoly(d) for d in cs], order)


def bareiss_det(matrix: List[List]) -> object:
    """Determinant by fraction-free elimination; entries need ``exact_div``-style division.

    Works for ints (floor division is exact here) and :class:`MPoly` entries.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if _is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return _zero_like(m[0][0])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = _exact_div(num, prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _is_zero(v) -> bool:
    return v.is_zero() if isinstance(v, MPoly) else v == 0


def _zero_like(v):
    return MPoly(v.vars) if isinstance(v, MPoly) else 0


def _exact_div(a, b):
    if isinstance(a, MPoly):
        if isinstance(b, MPoly):
            return a.exact_div(b)
        return a.scale(rdiv(1, b))
    if isinstance(b, MPoly):
        raise TypeError("scalar divided by polynomial")
    return rdiv(a, b)


# ---------------------------------------------------------------------------
# parsing


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


def _tokenize(text: str) -> List[Tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        else:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}")
            out.append(("op", op))
        pos = m.end()
    return out


def parse_poly(text: str, variables: Sequence[str]) -> MPoly:
    """Parse integers, variables, + - * / ^ and parentheses; juxtaposition multiplies.

    ``/`` is allowed only with a constant right operand.
    """
    variables = tuple(variables)
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        if pos >= len(toks):
            raise ParseError(f"unexpected end of input in {text!r}")
        tok = toks[pos]
        pos += 1
        return tok

    def expr() -> MPoly:
        kind, val = peek()
        sign = 1
        if (kind, val) == ("op", "-"):
            take()
            sign = -1
        elif (kind, val) == ("op", "+"):
            take()
        acc = term().scale(sign)
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                rhs = term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term() -> MPoly:
        acc = power()
        while True:
            kind, val = peek()
            if kind == "op" and val in "*/":
                take()
                rhs = power()
                if val == "*":
                    acc = acc * rhs
                else:
                    if any(any(e) for e in rhs.terms) or rhs.is_zero():
                        raise ParseError("division only by nonzero constants")
                    acc = acc.scale(rdiv(1, rhs.terms[(0,) * len(variables)]))
            elif kind in ("num", "name") or (kind, val) == ("op", "("):
                acc = acc * power()
            else:
                return acc

    def power() -> MPoly:
        base = atom()
        kind, val = peek()
        if (kind, val) == ("op", "^"):
            take()
            k, v = take()
            if k != "num":
                raise ParseError("exponent must be a non-negative integer")
            return base ** int(v)
        return base

    def atom() -> MPoly:
        if pos >= len(toks):
            raise ParseError("unexpected end of expression")
        kind, val = take()
        if kind == "num":
            return MPoly.const(variables, int(val))
        if kind == "name":
            if val not in variables:
                raise ParseError(f"unknown variable {val!r}; expected one of {variables}")
            return MPoly.gen(variables, val)
        if val == "(":
            inner = expr()
            if take() != ("op", ")"):
                raise ParseError("missing ')'")
            return inner
        if val == "-":
            return -power()
        raise ParseError(f"unexpected token {val!r}")

    if not toks:
        raise ParseError("empty expression")
    result = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input at token {toks[pos][1]!r}")
    return result


def split_top_level(text: str, sep: str = ",") -> List[str]:
    """Split on ``sep`` outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_upoly(text: str, var: str = "n") -> UPoly:
    return parse_poly(text, (var,)).to_upoly()
