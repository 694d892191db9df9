"""Differential operators sum_i a_i etabar^i between density modules on S^{1|1}.

Operators are kept in the normal form "coefficient on the left, etabar power
on the right".  Composition goes through the graded Leibniz rule, so every
result is again in normal form and equality is termwise.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .coeffs import as_coeff, format_coeff, parse_coeff
from .contact import Density, as_field
from .errors import NonHomogeneousInput, WeightMismatch
from .superfunction import SuperFunction

HALF = Fraction(1, 2)


def _sign(p):
    return -1 if p & 1 else 1


def super_binom(j, i):
    """(j i)_s = C([j/2], [i/2]) if i is even or j is odd, else 0."""
    if i < 0 or j < 0:
        return 0
    if i % 2 == 0 or j % 2 == 1:
        return comb(j // 2, i // 2)
    return 0


def zeta(i, j, lam):
    """Coefficient of the closed-form action (lemma on the natural action)."""
    return (lam * super_binom(j, j - i)
            - Fraction(_sign(i), 2) * super_binom(j, j - i + 1)
            + super_binom(j, j - i + 2))


def _weights_equal(a, b):
    return a is b or a == b


class DiffOperator:
    """A(F alpha^src) = sum_i coeffs[i] * etabar^i(F) alpha^dst.

    ``order2`` is the declared top index (twice the order); coefficients
    above the highest nonzero one are kept as explicit zeros.
    """

    __slots__ = ("coeffs", "src", "dst")

    def __init__(self, coeffs, src, dst, order2=None):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("an operator needs at least one coefficient slot")
        n, basis = coeffs[0].n, coeffs[0].basis
        if n != 1:
            raise ValueError("DiffOperator is the S^{1|1} operator; use OperatorN for n > 1")
        if order2 is not None:
            if order2 + 1 < len(coeffs):
                if any(c for c in coeffs[order2 + 1:]):
                    raise ValueError("nonzero coefficient above declared order")
                coeffs = coeffs[:order2 + 1]
            while len(coeffs) < order2 + 1:
                coeffs.append(SuperFunction.zero(n, basis))
        self.coeffs = tuple(coeffs)
        self.src = as_coeff(src)
        self.dst = as_coeff(dst)

    # -- construction ----------------------------------------------------
    @classmethod
    def monomial(cls, i, a, src, dst, order2=None):
        z = SuperFunction.zero(a.n, a.basis)
        coeffs = [z] * i + [a]
        return cls(coeffs, src, dst, order2 if order2 is not None else i)

    @classmethod
    def identity(cls, weight, order2=0, basis="poly"):
        return cls([SuperFunction.const(1, 1, basis)], weight, weight, order2)

    @classmethod
    def zero(cls, src, dst, order2=0, basis="poly"):
        return cls([SuperFunction.zero(1, basis)], src, dst, order2)

    # -- queries ---------------------------------------------------------
    @property
    def order2(self):
        return len(self.coeffs) - 1

    def true_order2(self):
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    @property
    def basis(self):
        return self.coeffs[0].basis

    def is_zero(self):
        return not any(self.coeffs)

    def parity(self):
        ps = set()
        for i, a in enumerate(self.coeffs):
            for (_, S) in a.terms:
                ps.add((len(S) + i) & 1)
        if len(ps) > 1:
            raise NonHomogeneousInput("operator is not parity-homogeneous")
        return ps.pop() if ps else 0

    def with_order2(self, order2):
        return DiffOperator(self.coeffs, self.src, self.dst, order2)

    # -- linear structure ------------------------------------------------
    def _pad(self, other):
        top = max(self.order2, other.order2)
        z = SuperFunction.zero(1, self.basis)
        a = list(self.coeffs) + [z] * (top - self.order2)
        b = list(other.coeffs) + [z] * (top - other.order2)
        return a, b

    def __add__(self, other):
        if not (_weights_equal(self.src, other.src) and _weights_equal(self.dst, other.dst)):
            raise WeightMismatch("cannot add operators between different density modules")
        a, b = self._pad(other)
        return DiffOperator([x + y for x, y in zip(a, b)], self.src, self.dst)

    def __neg__(self):
        return DiffOperator([-c for c in self.coeffs], self.src, self.dst)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return DiffOperator([a.scale(c) for a in self.coeffs], self.src, self.dst)

    def left_mul(self, f):
        """Multiplication by f composed after self."""
        return DiffOperator([f * a for a in self.coeffs], self.src, self.dst)

    # -- action ----------------------------------------------------------
    def apply_fn(self, F):
        out = SuperFunction.zero(F.n, F.basis)
        g = F
        for i, a in enumerate(self.coeffs):
            if i:
                g = g.etabar()
            if a:
                out = out + a * g
        return out

    def apply(self, d):
        if not isinstance(d, Density):
            raise TypeError("apply expects a Density; use apply_fn for bare functions")
        if not _weights_equal(d.weight, self.src):
            raise WeightMismatch(f"density of weight {d.weight} fed to operator from {self.src}")
        return Density(self.apply_fn(d.F), self.dst)

    def __call__(self, d):
        return self.apply(d) if isinstance(d, Density) else self.apply_fn(d)

    # -- identity --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        if not (_weights_equal(self.src, other.src) and _weights_equal(self.dst, other.dst)):
            return False
        a, b = self._pad(other)
        return all(x == y for x, y in zip(a, b))

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"[{a}]η̄^{i}" for i, a in enumerate(self.coeffs) if a) or "0"
        return f"DiffOperator({body}; {self.src} -> {self.dst})"

    def to_json(self):
        return {
            "lambda": format_coeff(self.src),
            "mu": format_coeff(self.dst),
            "order2": self.order2,
            "coeffs": [a.to_json() for a in self.coeffs],
        }

    @classmethod
    def from_json(cls, data):
        coeffs = [SuperFunction.from_json(c) for c in data["coeffs"]]
        lam = data.get("lambda", "λ")
        mu = data.get("mu", "μ")
        lam = parse_coeff(lam) if isinstance(lam, str) else as_coeff(lam)
        mu = parse_coeff(mu) if isinstance(mu, str) else as_coeff(mu)
        return cls(coeffs, _simplify_weight(lam), _simplify_weight(mu), data.get("order2"))


def _simplify_weight(w):
    """Collapse constant rational functions to Fractions."""
    from .coeffs import RationalCoeff
    if isinstance(w, RationalCoeff) and w.is_constant():
        return w.constant_value()
    return w


def push_through_coeffs(j, F):
    """Coefficients c_0..c_j with etabar^j o F = sum_r c_r etabar^r (F homogeneous)."""
    if not F.is_homogeneous():
        raise NonHomogeneousInput("graded Leibniz rule needs homogeneous F")
    pf = F.parity()
    out = [SuperFunction.zero(F.n, F.basis)] * (j + 1)
    g = F
    for i in range(j + 1):
        if i:
            g = g.etabar()
        sb = super_binom(j, i)
        if sb and g:
            c = sb * _sign(pf * (j - i))
            out[j - i] = out[j - i] + g.scale(c)
    return out


def push_through(j, F, src=0, dst=0):
    """The operator etabar^j o F in normal form."""
    return DiffOperator(push_through_coeffs(j, F), src, dst)


def _push_through_any(j, F, cache):
    key = (j, id(F))
    hit = cache.get(key)
    if hit is not None:
        return hit
    if F.is_homogeneous():
        res = push_through_coeffs(j, F)
    else:
        even, odd = F.homogeneous_parts()
        a = push_through_coeffs(j, even)
        b = push_through_coeffs(j, odd)
        res = [x + y for x, y in zip(a, b)]
    cache[key] = res
    return res


def compose(A, B):
    """A o B in normal form; requires A.src == B.dst."""
    if not _weights_equal(A.src, B.dst):
        raise WeightMismatch(f"cannot compose: {A.src} != {B.dst}")
    basis = A.basis
    top = A.order2 + B.order2
    out = [SuperFunction.zero(1, basis) for _ in range(top + 1)]
    cache = {}
    for i, a in enumerate(A.coeffs):
        if not a:
            continue
        for j, b in enumerate(B.coeffs):
            if not b:
                continue
            pushed = _push_through_any(i, b, cache)
            for r, c in enumerate(pushed):
                if c:
                    out[r + j] = out[r + j] + a * c
    return DiffOperator(out, B.src, A.dst)


def lie_operator(X, weight, basis="poly"):
    """L^weight_{X_F} written as lam F' - 1/2 (-1)^{|F|} etabar(F) etabar - F etabar^2."""
    X = as_field(X)
    F = X.F
    c0 = F.d_dx().scale(weight) if weight else SuperFunction.zero(1, F.basis)
    c1 = F.etabar().scale(-HALF * _sign(X.parity))
    c2 = -F
    return DiffOperator([c0, c1, c2], weight, weight)


def module_action(X, A):
    """L^{lambda,mu}_X(A) = L^mu_X o A - (-1)^{|A||F|} A o L^lambda_X."""
    X = as_field(X)
    if A.is_zero():
        return A
    pa = A.parity()
    left = compose(lie_operator(X, A.dst), A)
    right = compose(A, lie_operator(X, A.src))
    res = left - right.scale(_sign(pa * X.parity))
    return res.with_order2(A.order2)


def action_closed(X, A):
    """Closed form of the natural action: coefficient-wise formula with zeta."""
    X = as_field(X)
    if A.is_zero():
        return A
    F = X.F
    pf = X.parity
    pa = A.parity()
    lam, mu = A.src, A.dst
    delta = mu - lam
    Fp = F.d_dx()
    etabar_Fp = [Fp]
    for _ in range(A.order2):
        etabar_Fp.append(etabar_Fp[-1].etabar())
    out = []
    for i, a in enumerate(A.coeffs):
        from .contact import lie_density_fn
        term = lie_density_fn(X, a, delta - Fraction(i, 2)) if a else SuperFunction.zero(1, A.basis)
        for j in range(i + 1, A.order2 + 1):
            aj = A.coeffs[j]
            if not aj:
                continue
            z = zeta(i, j, lam)
            if not z:
                continue
            s = _sign((pf + pa + j) * (j - i))
            term = term - (etabar_Fp[j - i] * aj).scale(z * s)
        out.append(term)
    return DiffOperator(out, lam, mu)


def conjugate(A):
    """a etabar^i -> (-1)^{[(i+1)/2] + i|a|} etabar^i o a, into the adjoint module."""
    pa = A.parity()
    half = Fraction(1, 2)
    out = [SuperFunction.zero(1, A.basis) for _ in range(A.order2 + 1)]
    for i, a in enumerate(A.coeffs):
        if not a:
            continue
        pai = (pa + i) & 1
        s = _sign((i + 1) // 2 + i * pai)
        for r, c in enumerate(push_through_coeffs(i, a)):
            if c:
                out[r] = out[r] + c.scale(s)
    return DiffOperator(out, half - A.dst, half - A.src)


def spanning_operators(order2, degree, src, dst, basis="poly"):
    """Single-slot operators a etabar^i with a a basis monomial (the spanning probes)."""
    ops = []
    for i in range(order2 + 1):
        for a in SuperFunction.spanning(1, basis, degree):
            ops.append(DiffOperator.monomial(i, a, src, dst, order2))
    return ops
