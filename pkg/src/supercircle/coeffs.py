"""Exact coefficients: the field Q(lambda, mu) and its Gaussian extension.

Concrete values are plain :class:`fractions.Fraction` objects; formal values
are :class:`RationalCoeff`.  Both interoperate through the usual operators,
so every algorithm in the package is written once over "some field element".

Denominators are kept as a multiset of normalized polynomial factors.  Sums
take the least common multiple of the factor multisets, and numerators are
trial-divided by the denominator factors after every operation.  This keeps
expressions small without a multivariate gcd; equality is always decided by
cross-multiplication.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZero, ParseError, PoleAtPoint

__all__ = [
    "ParamPoly",
    "RationalCoeff",
    "GaussianCoeff",
    "LAM",
    "MU",
    "DELTA",
    "I",
    "as_coeff",
    "binom",
    "eval_at",
    "field_arith",
    "floor_div2",
    "is_zero",
    "parse_coeff",
    "format_coeff",
    "subs",
]

_ONE = Fraction(1)
_ZERO = Fraction(0)


def _lex_key(exp):
    return exp


class ParamPoly:
    """Sparse polynomial in lambda and mu with rational coefficients.

    ``terms`` maps ``(e_lambda, e_mu)`` to a nonzero :class:`Fraction`.
    """

    __slots__ = ("terms", "_hash", "_lead")

    def __init__(self, terms=None):
        if terms:
            self.terms = {k: v for k, v in terms.items() if v}
        else:
            self.terms = {}
        self._hash = None
        self._lead = None

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        p._lead = None
        return p

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, a, b, c=1):
        c = Fraction(c)
        return cls._raw({(a, b): c} if c else {})

    # -- queries ---------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def constant_value(self):
        return self.terms.get((0, 0), _ZERO)

    def lead(self):
        """Leading exponent in lex order (lambda > mu)."""
        if self._lead is None:
            self._lead = max(self.terms, key=_lex_key)
        return self._lead

    def degree(self):
        return max((a + b for a, b in self.terms), default=-1)

    def variables(self):
        used = set()
        for a, b in self.terms:
            if a:
                used.add("λ")
            if b:
                used.add("μ")
        return used

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ParamPoly):
            other = ParamPoly.const(other)
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        for k, v in small.items():
            s = out.get(k, _ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ParamPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, ParamPoly):
            other = ParamPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return ParamPoly._raw({})
        return ParamPoly._raw({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ParamPoly):
            return self.scale(other)
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                s = out.get(k, _ZERO) + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        return ParamPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = ParamPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exact_div(self, other):
        """Return ``self / other`` if it is a polynomial, otherwise None."""
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if self.is_zero():
            return self
        la, lb = other.lead()
        lc = other.terms[(la, lb)]
        rem = dict(self.terms)
        quot = {}
        while rem:
            ra, rb = max(rem, key=_lex_key)
            if ra < la or rb < lb:
                return None
            qa, qb = ra - la, rb - lb
            qc = rem[(ra, rb)] / lc
            quot[(qa, qb)] = qc
            for (a, b), c in other.terms.items():
                k = (a + qa, b + qb)
                s = rem.get(k, _ZERO) - c * qc
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        return ParamPoly._raw(quot)

    # -- evaluation ------------------------------------------------------
    def eval(self, lam, mu):
        total = _ZERO
        for (a, b), c in self.terms.items():
            total += c * Fraction(lam) ** a * Fraction(mu) ** b
        return total

    def compose(self, lam_value, mu_value):
        """Substitute arbitrary field elements for lambda and mu."""
        total = 0
        pow_l = {0: 1}
        pow_m = {0: 1}
        for (a, b), c in sorted(self.terms.items()):
            if a not in pow_l:
                pow_l[a] = _power(lam_value, a)
            if b not in pow_m:
                pow_m[b] = _power(mu_value, b)
            total = total + c * pow_l[a] * pow_m[b]
        return total

    # -- identity --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ParamPoly.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sort_key(self):
        return tuple(sorted(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.terms[(a, b)]
            mono = []
            if a:
                mono.append("λ" if a == 1 else f"λ^{a}")
            if b:
                mono.append("μ" if b == 1 else f"μ^{b}")
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono and mag == 1:
                body = "*".join(mono)
            elif mono:
                body = f"{_fmt_fraction(mag)}*" + "*".join(mono)
            else:
                body = _fmt_fraction(mag)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"ParamPoly({self})"


def _fmt_fraction(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _power(x, e):
    r = 1
    for _ in range(e):
        r = r * x
    return r


def _normalize_factor(poly):
    """Split a nonzero polynomial into (scalar, lambda power, mu power, monic rest)."""
    ma = min(a for a, _ in poly.terms)
    mb = min(b for _, b in poly.terms)
    if ma or mb:
        poly = ParamPoly._raw({(a - ma, b - mb): c for (a, b), c in poly.terms.items()})
    if poly.is_constant():
        return poly.constant_value(), ma, mb, None
    lc = poly.terms[poly.lead()]
    if lc != 1:
        poly = poly.scale(1 / lc)
    return lc, ma, mb, poly


_LAM_POLY = ParamPoly.monomial(1, 0)
_MU_POLY = ParamPoly.monomial(0, 1)


class RationalCoeff:
    """Element of Q(lambda, mu): a numerator over a product of factors."""

    __slots__ = ("num", "factors")

    def __init__(self, num, den=None):
        if not isinstance(num, ParamPoly):
            num = ParamPoly.const(num)
        if den is None:
            self.num, self.factors = num, ()
            return
        if not isinstance(den, ParamPoly):
            den = ParamPoly.const(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        r = RationalCoeff._build(num, {}) / RationalCoeff._build(den, {})
        self.num, self.factors = r.num, r.factors

    @classmethod
    def _from_parts(cls, num, factors):
        r = cls.__new__(cls)
        r.num = num
        r.factors = factors
        return r

    @classmethod
    def _build(cls, num, fdict):
        if num.is_zero():
            return cls._from_parts(num, ())
        items = []
        for f, e in fdict.items():
            while e and not num.is_constant():
                q = num.exact_div(f)
                if q is None:
                    break
                num = q
                e -= 1
            if e:
                items.append((f, e))
        items.sort(key=lambda fe: fe[0].sort_key())
        return cls._from_parts(num, tuple(items))

    @classmethod
    def lam(cls):
        return cls._from_parts(_LAM_POLY, ())

    @classmethod
    def mu(cls):
        return cls._from_parts(_MU_POLY, ())

    @property
    def den(self):
        out = ParamPoly.const(1)
        for f, e in self.factors:
            out = out * f ** e
        return out

    def is_polynomial(self):
        return not self.factors

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalCoeff):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalCoeff._from_parts(ParamPoly.const(other), ())
        if isinstance(other, ParamPoly):
            return RationalCoeff._from_parts(other, ())
        return None

    def __add__(self, other):
        o = RationalCoeff._coerce(other)
        if o is None:
            return NotImplemented
        if not o.factors and not self.factors:
            return RationalCoeff._from_parts(self.num + o.num, ())
        if self.num.is_zero():
            return o
        if o.num.is_zero():
            return self
        fa = dict(self.factors)
        fb = dict(o.factors)
        lcm = dict(fa)
        for f, e in fb.items():
            if lcm.get(f, 0) < e:
                lcm[f] = e
        na = self.num
        for f, e in lcm.items():
            d = e - fa.get(f, 0)
            if d:
                na = na * f ** d
        nb = o.num
        for f, e in lcm.items():
            d = e - fb.get(f, 0)
            if d:
                nb = nb * f ** d
        return RationalCoeff._build(na + nb, lcm)

    __radd__ = __add__

    def __neg__(self):
        return RationalCoeff._from_parts(-self.num, self.factors)

    def __sub__(self, other):
        o = RationalCoeff._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = RationalCoeff._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RationalCoeff._from_parts(ParamPoly._raw({}), ())
            return RationalCoeff._from_parts(self.num.scale(other), self.factors)
        o = RationalCoeff._coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RationalCoeff._from_parts(ParamPoly._raw({}), ())
        if not self.factors and not o.factors:
            return RationalCoeff._from_parts(self.num * o.num, ())
        fd = dict(self.factors)
        for f, e in o.factors:
            fd[f] = fd.get(f, 0) + e
        return RationalCoeff._build(self.num * o.num, fd)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("division by the zero rational function")
        scalar, ma, mb, rest = _normalize_factor(self.num)
        num = self.den.scale(1 / scalar)
        fd = {}
        if ma:
            fd[_LAM_POLY] = ma
        if mb:
            fd[_MU_POLY] = mb
        if rest is not None:
            fd[rest] = fd.get(rest, 0) + 1
        return RationalCoeff._build(num, fd)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero")
            return RationalCoeff._from_parts(self.num.scale(1 / Fraction(other)), self.factors)
        o = RationalCoeff._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = RationalCoeff._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        r = RationalCoeff._from_parts(ParamPoly.const(1), ())
        for _ in range(e):
            r = r * self
        return r

    # -- identity --------------------------------------------------------
    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        o = RationalCoeff._coerce(other)
        if o is None:
            return NotImplemented
        # cross-multiplication
        return (self.num * o.den - o.num * self.den).is_zero()

    __hash__ = None

    def is_constant(self):
        return not self.factors and self.num.is_constant()

    def constant_value(self):
        return self.num.constant_value()

    def reduced(self):
        """Cancel any remaining common factor (display only)."""
        return RationalCoeff._build(self.num, dict(self.factors))

    def eval(self, lam, mu):
        den = self.den.eval(lam, mu)
        if not den:
            raise PoleAtPoint(f"denominator vanishes at (λ, μ) = ({lam}, {mu})")
        return self.num.eval(lam, mu) / den

    def compose(self, lam_value, mu_value):
        num = self.num.compose(lam_value, mu_value)
        den = self.den.compose(lam_value, mu_value)
        if not den:
            raise PoleAtPoint("denominator vanishes after substitution")
        return num / den if not isinstance(den, (int, Fraction)) or den != 1 else num

    def __str__(self):
        if not self.factors:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalCoeff({self})"


class GaussianCoeff:
    """``re + i*im`` with i^2 = -1; components are field elements."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re
        self.im = im

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianCoeff):
            return other
        if isinstance(other, (int, Fraction, RationalCoeff)):
            return GaussianCoeff(other, 0)
        return None

    def __add__(self, other):
        o = GaussianCoeff._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianCoeff(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianCoeff(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussianCoeff._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianCoeff(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussianCoeff._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RationalCoeff)):
            return GaussianCoeff(self.re * other, self.im * other)
        o = GaussianCoeff._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianCoeff(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianCoeff(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = GaussianCoeff._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if not n:
            raise DivisionByZero("division by zero")
        p = self * o.conjugate()
        return GaussianCoeff(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        o = GaussianCoeff._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = GaussianCoeff._coerce(other)
        if o is None:
            return NotImplemented
        return (self.re == o.re) and (self.im == o.im)

    __hash__ = None

    def __str__(self):
        if not self.im:
            return format_coeff(self.re)
        if not self.re:
            return f"({format_coeff(self.im)})*i"
        return f"{_paren(self.re)} + ({format_coeff(self.im)})*i"

    def __repr__(self):
        return f"GaussianCoeff({self})"


def _paren(c):
    s = format_coeff(c)
    return s if re.fullmatch(r"-?[0-9/]+", s) else f"({s})"


LAM = RationalCoeff.lam()
MU = RationalCoeff.mu()
DELTA = MU - LAM
I = GaussianCoeff(0, 1)


# -- helpers --------------------------------------------------------------

def as_coeff(value):
    """Normalize ints/strings to exact field elements."""
    if isinstance(value, (Fraction, RationalCoeff, GaussianCoeff)):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_coeff(value)
    if isinstance(value, Rational):
        return Fraction(value)
    raise TypeError(f"not an exact coefficient: {value!r}")


def is_zero(c):
    return not c


def field_arith(a, b, op):
    """Exact field arithmetic; ``op`` is one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def eval_at(c, lam, mu):
    """Evaluate a coefficient at concrete rational weights."""
    if isinstance(c, RationalCoeff):
        return c.eval(Fraction(lam), Fraction(mu))
    if isinstance(c, GaussianCoeff):
        return GaussianCoeff(eval_at(c.re, lam, mu), eval_at(c.im, lam, mu))
    return Fraction(c)


def subs(c, lam_value, mu_value):
    """Substitute field elements for lambda and mu inside ``c``."""
    if isinstance(c, RationalCoeff):
        if c.is_constant():
            return c.constant_value()
        return c.compose(lam_value, mu_value)
    if isinstance(c, GaussianCoeff):
        return GaussianCoeff(subs(c.re, lam_value, mu_value), subs(c.im, lam_value, mu_value))
    return c


def floor_div2(x):
    """Integer part of x/2 for x >= 0; negative arguments are rejected."""
    if x < 0:
        raise ValueError(f"integer part requested for negative argument {x}/2")
    return x // 2


def binom(nu, i):
    """Falling-factorial binomial nu(nu-1)...(nu-i+1)/i!, valid for symbolic nu."""
    if i < 0:
        return Fraction(0)
    if isinstance(nu, int) and not isinstance(nu, bool) and nu >= 0:
        return Fraction(math.comb(nu, i))
    acc = Fraction(1)
    for r in range(i):
        acc = acc * (nu - r)
    return acc / math.factorial(i)


def format_coeff(c):
    if isinstance(c, Fraction):
        return _fmt_fraction(c)
    if isinstance(c, int):
        return str(c)
    return str(c)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(λ|lambda|μ|mu|δ|delta|i)\b|(λ|μ|δ)|([-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
        num, ident, greek, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None or greek is not None:
            out.append(("id", ident or greek))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.pos += 1
        return t

    def expect(self, op):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r}, got {t[1]!r}")

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                v = v * rhs
            else:
                if not rhs:
                    raise DivisionByZero("division by zero in parsed expression")
                v = v / rhs
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            return _power(base, val)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return RationalCoeff(ParamPoly.const(val))
        if kind == "id":
            if val in ("λ", "lambda"):
                return LAM
            if val in ("μ", "mu"):
                return MU
            if val in ("δ", "delta"):
                return DELTA
            if val == "i":
                return I
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.expect(")")
            return v
        raise ParseError(f"unexpected token {val!r}")


def parse_coeff(text):
    """Parse ``num / den`` style expressions into a RationalCoeff or GaussianCoeff."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty coefficient")
    p = _Parser(toks)
    v = p.expr()
    if p.pos != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    return v
