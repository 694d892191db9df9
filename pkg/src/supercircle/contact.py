"""Contact vector fields X_F, the contact bracket, and weighted densities.

Formulas are written for any number n of odd variables; with n = 1 they are
the S^{1|1} ones, ``X_F = F d/dx - 1/2 (-1)^{|F|} etabar(F) etabar``.
"""
from __future__ import annotations

from fractions import Fraction

from .coeffs import as_coeff
from .errors import NonHomogeneousInput
from .superfunction import POLY, SuperFunction

HALF = Fraction(1, 2)


def _sign(parity):
    return -1 if parity & 1 else 1


class ContactField:
    """The contact vector field X_F generated by a homogeneous superfunction F."""

    __slots__ = ("F", "parity")

    def __init__(self, F):
        if not F.is_homogeneous():
            raise NonHomogeneousInput("contact fields need a parity-homogeneous generator")
        self.F = F
        self.parity = F.parity()

    @property
    def n(self):
        return self.F.n

    def __call__(self, G):
        return lie_fn(self, G)

    def vector_field(self):
        """Coordinate expansion (X(x), X(theta_1), ..., X(theta_n))."""
        return VectorField.from_contact(self)

    def __eq__(self, other):
        return isinstance(other, ContactField) and self.F == other.F

    __hash__ = None

    def __repr__(self):
        return f"X[{self.F}]"


def as_field(X):
    return X if isinstance(X, ContactField) else ContactField(X)


class Density:
    """A superfunction tagged with a weight: ``F alpha^weight``."""

    __slots__ = ("F", "weight")

    def __init__(self, F, weight):
        self.F = F
        self.weight = as_coeff(weight) if isinstance(weight, (int, str)) else weight

    def parity(self):
        return self.F.parity()

    def __eq__(self, other):
        if not isinstance(other, Density):
            return NotImplemented
        return self.F == other.F and self.weight == other.weight

    __hash__ = None

    def __repr__(self):
        return f"Density({self.F}, weight={self.weight})"

    def to_json(self):
        from .coeffs import format_coeff
        data = self.F.to_json()
        data["weight"] = format_coeff(self.weight)
        return data

    @classmethod
    def from_json(cls, data):
        from .coeffs import parse_coeff
        w = data.get("weight", "0")
        return cls(SuperFunction.from_json(data), parse_coeff(w) if isinstance(w, str) else w)


def _odd_pairing(F, G):
    """Sum over i of etabar_i(F) * etabar_i(G)."""
    total = SuperFunction.zero(F.n, F.basis)
    for i in range(1, F.n + 1):
        total = total + F.etabar(i) * G.etabar(i)
    return total


def contact_bracket(F, G):
    """{F, G} = F G' - F' G - 1/2 (-1)^{|F|} sum_i etabar_i(F) etabar_i(G)."""
    if not F.is_homogeneous():
        raise NonHomogeneousInput("contact bracket needs homogeneous F")
    pf = F.parity()
    return F * G.d_dx() - F.d_dx() * G - _odd_pairing(F, G).scale(HALF * _sign(pf))


def lie_fn(X, G):
    """Action of K(n) on functions: F G' - 1/2 (-1)^{|F|} sum_i etabar_i(F) etabar_i(G)."""
    X = as_field(X)
    F = X.F
    return F * G.d_dx() - _odd_pairing(F, G).scale(HALF * _sign(X.parity))


def lie_density(X, d, weight=None):
    """Lie derivative of a weighted density; returns a Density of the same weight."""
    if not isinstance(d, Density):
        d = Density(d, weight)
    return Density(lie_density_fn(X, d.F, d.weight), d.weight)


def lie_density_fn(X, G, weight):
    """Same as :func:`lie_density` but on bare functions."""
    X = as_field(X)
    out = lie_fn(X, G)
    if weight:
        out = out + (X.F.d_dx() * G).scale(weight)
    return out


def osp_generators(n=1, basis=POLY):
    """The functions 1, x, x^2, theta, x theta (n = 1)."""
    if basis != POLY:
        raise ValueError("osp(1|2) generators live in the polynomial basis")
    x = SuperFunction.x
    th = SuperFunction.monomial
    return [x(0, n), x(1, n), x(2, n), th(0, (1,), 1, n), th(1, (1,), 1, n)]


def osp_basis():
    """X_1, X_x, X_{x^2}, X_theta, X_{x theta}."""
    return [ContactField(F) for F in osp_generators()]


def spanning_fields(n=1, degree=6, basis=POLY):
    return [ContactField(F) for F in SuperFunction.spanning(n, basis, degree)]


class VectorField:
    """Coordinate vector field sum_a c_a d/dz_a on S^{1|n}, homogeneous."""

    __slots__ = ("cx", "ctheta", "parity")

    def __init__(self, cx, ctheta, parity):
        self.cx = cx
        self.ctheta = tuple(ctheta)
        self.parity = parity

    @classmethod
    def from_contact(cls, X):
        X = as_field(X)
        n = X.n
        basis = X.F.basis
        cx = lie_fn(X, SuperFunction.x(1, n) if basis == POLY else _coordinate_x(n))
        ct = [lie_fn(X, SuperFunction.monomial(0, (i,), 1, n, basis)) for i in range(1, n + 1)]
        return cls(cx, ct, X.parity)

    def __call__(self, G):
        out = self.cx * G.d_dx()
        for i, c in enumerate(self.ctheta, start=1):
            out = out + c * G.d_theta(i)
        return out

    def bracket(self, other):
        """Super-commutator [X, Y] = XY - (-1)^{|X||Y|} YX."""
        s = _sign(self.parity * other.parity)
        cx = self(other.cx) - other(self.cx).scale(s)
        ct = [self(b) - other(a).scale(s) for a, b in zip(self.ctheta, other.ctheta)]
        return VectorField(cx, ct, (self.parity + other.parity) & 1)

    def recover_generator(self):
        """F with X = X_F, read off as X(x) - (-1)^{|X|} sum_i theta_i X(theta_i)."""
        out = self.cx
        s = _sign(self.parity)
        for i, c in enumerate(self.ctheta, start=1):
            out = out - c.theta_mul(i).scale(s)
        return out

    def __eq__(self, other):
        return (isinstance(other, VectorField) and self.cx == other.cx
                and self.ctheta == other.ctheta)

    __hash__ = None


def _coordinate_x(n):
    raise ValueError("the coordinate x is not in the Fourier basis")
