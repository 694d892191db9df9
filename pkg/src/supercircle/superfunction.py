"""Superfunctions on S^{1|n} over two exact scalar bases.

A :class:`SuperFunction` is a finite sum of terms ``c * s_m(x) * theta_S``
where ``s_m`` is ``x**m`` (``basis="poly"``) or ``exp(i*m*x)``
(``basis="fourier"``) and ``S`` is a strictly increasing tuple of odd
indices in ``1..n``.  Grassmann monomials are always stored in increasing
index order; reordering signs are applied on multiplication.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .coeffs import GaussianCoeff, as_coeff, format_coeff, parse_coeff, subs
from .errors import BasisMismatch, IndexOutOfRange, NonHomogeneousInput

POLY = "poly"
FOURIER = "fourier"
_BASES = (POLY, FOURIER)


def _merge_sign(s, t):
    """Sign of theta_s * theta_t rewritten in increasing order, 0 if they overlap."""
    if not s or not t:
        return 1
    inversions = 0
    for a in s:
        for b in t:
            if a == b:
                return 0
            if a > b:
                inversions += 1
    return -1 if inversions & 1 else 1


class SuperFunction:
    __slots__ = ("n", "basis", "terms")

    def __init__(self, n=1, basis=POLY, terms=None):
        if basis not in _BASES:
            raise ValueError(f"unknown scalar basis {basis!r}")
        self.n = n
        self.basis = basis
        self.terms = {}
        if terms:
            for (m, S), c in terms.items():
                S = tuple(S)
                if list(S) != sorted(set(S)):
                    raise ValueError(f"theta index set must be strictly increasing: {S}")
                if S and (S[0] < 1 or S[-1] > n):
                    raise IndexOutOfRange(f"theta index out of range 1..{n}: {S}")
                if basis == POLY and m < 0:
                    raise ValueError("polynomial basis needs nonnegative exponents")
                c = as_coeff(c)
                if c:
                    self.terms[(m, S)] = c

    @classmethod
    def _raw(cls, n, basis, terms):
        f = cls.__new__(cls)
        f.n = n
        f.basis = basis
        f.terms = terms
        return f

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, n=1, basis=POLY):
        return cls._raw(n, basis, {})

    @classmethod
    def const(cls, c, n=1, basis=POLY):
        c = as_coeff(c)
        return cls._raw(n, basis, {(0, ()): c} if c else {})

    @classmethod
    def monomial(cls, m=0, theta=(), c=1, n=1, basis=POLY):
        return cls(n, basis, {(m, tuple(theta)): c})

    @classmethod
    def x(cls, m=1, n=1):
        return cls.monomial(m, (), 1, n, POLY)

    @classmethod
    def theta(cls, i=1, n=1, basis=POLY):
        return cls.monomial(0, (i,), 1, n, basis)

    @classmethod
    def fourier(cls, m, theta=(), c=1, n=1):
        return cls.monomial(m, theta, c, n, FOURIER)

    @classmethod
    def spanning(cls, n=1, basis=POLY, degree=6):
        """All basis monomials with scalar index up to ``degree`` (|m| for Fourier)."""
        scalars = range(degree + 1) if basis == POLY else range(-degree, degree + 1)
        subsets = [S for r in range(n + 1) for S in combinations(range(1, n + 1), r)]
        return [cls._raw(n, basis, {(m, S): Fraction(1)}) for m in scalars for S in subsets]

    # -- queries ---------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def parity(self):
        """Parity of a homogeneous function (0 for the zero function)."""
        parities = {len(S) & 1 for (_, S) in self.terms}
        if len(parities) > 1:
            raise NonHomogeneousInput("superfunction is not parity-homogeneous")
        return parities.pop() if parities else 0

    def is_homogeneous(self):
        return len({len(S) & 1 for (_, S) in self.terms}) <= 1

    def homogeneous_parts(self):
        even = {k: c for k, c in self.terms.items() if not len(k[1]) & 1}
        odd = {k: c for k, c in self.terms.items() if len(k[1]) & 1}
        return (SuperFunction._raw(self.n, self.basis, even),
                SuperFunction._raw(self.n, self.basis, odd))

    def coefficient(self, m, theta=()):
        return self.terms.get((m, tuple(theta)), Fraction(0))

    def _check(self, other):
        if self.n != other.n or self.basis != other.basis:
            raise BasisMismatch(
                f"cannot combine (n={self.n}, {self.basis}) with (n={other.n}, {other.basis})")

    # -- linear structure ------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, SuperFunction):
            if other == 0:
                return self
            other = SuperFunction.const(other, self.n, self.basis)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                s = out[k] + c
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = c
        return SuperFunction._raw(self.n, self.basis, out)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return SuperFunction._raw(self.n, self.basis, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SuperFunction):
            other = SuperFunction.const(other, self.n, self.basis)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not c:
            return SuperFunction._raw(self.n, self.basis, {})
        out = {}
        for k, v in self.terms.items():
            p = v * c
            if p:
                out[k] = p
        return SuperFunction._raw(self.n, self.basis, out)

    # -- product ---------------------------------------------------------
    def __mul__(self, other):
        if not isinstance(other, SuperFunction):
            return self.scale(other)
        self._check(other)
        out = {}
        for (m1, s1), c1 in self.terms.items():
            for (m2, s2), c2 in other.terms.items():
                sign = _merge_sign(s1, s2)
                if not sign:
                    continue
                key = (m1 + m2, tuple(sorted(s1 + s2)) if s1 and s2 else (s1 or s2))
                p = c1 * c2
                if sign < 0:
                    p = -p
                if key in out:
                    s = out[key] + p
                    if s:
                        out[key] = s
                    else:
                        del out[key]
                elif p:
                    out[key] = p
        return SuperFunction._raw(self.n, self.basis, out)

    def __rmul__(self, other):
        return self.scale(other)

    # -- derivations -----------------------------------------------------
    def d_dx(self):
        out = {}
        if self.basis == POLY:
            for (m, S), c in self.terms.items():
                if m:
                    out[(m - 1, S)] = c * m
        else:
            for (m, S), c in self.terms.items():
                if m:
                    out[(m, S)] = GaussianCoeff(0, m) * c
        return SuperFunction._raw(self.n, self.basis, out)

    def deriv(self, order=1):
        f = self
        for _ in range(order):
            f = f.d_dx()
        return f

    def _check_index(self, i):
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"odd index {i} outside 1..{self.n}")

    def d_theta(self, i=1):
        """Left derivative with respect to theta_i."""
        self._check_index(i)
        out = {}
        for (m, S), c in self.terms.items():
            if i in S:
                pos = S.index(i)
                out[(m, S[:pos] + S[pos + 1:])] = -c if pos & 1 else c
        return SuperFunction._raw(self.n, self.basis, out)

    def theta_mul(self, i=1):
        """Left multiplication by theta_i."""
        self._check_index(i)
        out = {}
        for (m, S), c in self.terms.items():
            if i in S:
                continue
            before = sum(1 for s in S if s < i)
            key = (m, tuple(sorted(S + (i,))))
            out[key] = -c if before & 1 else c
        return SuperFunction._raw(self.n, self.basis, out)

    def eta(self, i=1):
        """eta_i = d/dtheta_i + theta_i d/dx."""
        return self.d_theta(i) + self.d_dx().theta_mul(i)

    def etabar(self, i=1):
        """etabar_i = d/dtheta_i - theta_i d/dx."""
        return self.d_theta(i) - self.d_dx().theta_mul(i)

    def eta_pow(self, k, i=1):
        f = self
        for _ in range(k):
            f = f.eta(i)
        return f

    def etabar_pow(self, k, i=1):
        f = self
        for _ in range(k):
            f = f.etabar(i)
        return f

    def pi(self):
        """pi(F) = (-1)^{|F|} F, applied termwise."""
        return SuperFunction._raw(
            self.n, self.basis,
            {k: (-c if len(k[1]) & 1 else c) for k, c in self.terms.items()})

    # -- coefficient maps ------------------------------------------------
    def map_coeffs(self, fn):
        out = {}
        for k, c in self.terms.items():
            v = fn(c)
            if v:
                out[k] = v
        return SuperFunction._raw(self.n, self.basis, out)

    def subs(self, lam_value, mu_value):
        return self.map_coeffs(lambda c: subs(c, lam_value, mu_value))

    def top_coefficient(self):
        """Scalar part multiplying theta_1...theta_n, as {m: coeff}."""
        top = tuple(range(1, self.n + 1))
        return {m: c for (m, S), c in self.terms.items() if S == top}

    # -- identity & display ----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, SuperFunction):
            if (self.n, self.basis) != (other.n, other.basis):
                return False
            if self.terms.keys() != other.terms.keys():
                return False
            return all(self.terms[k] == other.terms[k] for k in self.terms)
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0], len(kv[0][1]), kv[0][1]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (m, S), c in self.sorted_terms():
            if self.basis == POLY:
                scal = "" if m == 0 else ("x" if m == 1 else f"x^{m}")
            else:
                scal = "" if m == 0 else f"e^({m}ix)"
            th = "".join(f"θ{s}" if self.n > 1 else "θ" for s in S)
            mono = "*".join(p for p in (scal, th) if p)
            cs = format_coeff(c)
            if mono:
                parts.append(f"({cs})*{mono}" if cs not in ("1",) else mono)
            else:
                parts.append(f"({cs})")
        return " + ".join(parts)

    def __repr__(self):
        return f"SuperFunction({self})"

    # -- JSON ------------------------------------------------------------
    def to_json(self):
        return {
            "n": self.n,
            "basis": self.basis,
            "terms": [
                {"m": m, "theta": list(S), "coeff": format_coeff(c)}
                for (m, S), c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data):
        n = data.get("n", 1)
        basis = data.get("basis", POLY)
        terms = {}
        for t in data.get("terms", []):
            key = (int(t["m"]), tuple(sorted(t.get("theta", []))))
            c = t.get("coeff", "1")
            c = parse_coeff(c) if isinstance(c, str) else as_coeff(c)
            terms[key] = terms.get(key, 0) + c
        return cls(n, basis, terms)


def sf_mul(F, G):
    return F * G


def d_dx(F):
    return F.d_dx()


def eta(F, i=1):
    return F.eta(i)


def etabar(F, i=1):
    return F.etabar(i)
