"""Supertransvectants J_k^lambda: osp(1|2)-invariant bilinear maps K(1) x F_lambda -> F_{lambda+k-1}.

A transvectant is kept as a list of :class:`BilinearTerm` records so that
its coefficients can be inspected as well as applied.  ``normalized=True``
uses the short forms for k = 5/2, 3, 7/2; every other k (and
``normalized=False``) uses the general Gamma sums.
"""
from __future__ import annotations

from fractions import Fraction

from .coeffs import as_coeff, binom
from .errors import NonHomogeneousInput, UnsupportedOrder
from .linalg import LinearSystem
from .superfunction import SuperFunction


def _sign(p):
    return -1 if p & 1 else 1


class BilinearTerm:
    """coeff * (-1)^{f_sign |F|} * etabar^{f_bar}(F^(f_der)) * etabar^{g_bar}(G^(g_der))."""

    __slots__ = ("coeff", "f_der", "f_bar", "g_der", "g_bar", "f_sign")

    def __init__(self, coeff, f_der, f_bar, g_der, g_bar, f_sign=0):
        self.coeff = coeff
        self.f_der = f_der
        self.f_bar = f_bar
        self.g_der = g_der
        self.g_bar = g_bar
        self.f_sign = f_sign

    def g_etabar_power(self):
        """G^(r) = (-1)^r etabar^{2r}(G): returns (power of etabar on G, sign)."""
        return 2 * self.g_der + self.g_bar, _sign(self.g_der)

    def __repr__(self):
        return (f"BilinearTerm({self.coeff}, F:{self.f_der}/{self.f_bar}, "
                f"G:{self.g_der}/{self.g_bar}, sign^{self.f_sign})")


def _as_half(k):
    k = Fraction(k)
    if (2 * k).denominator != 1 or k <= 0:
        raise UnsupportedOrder(f"transvectant order must be a positive half-integer, got {k}")
    return k


def Gamma(i, j, k, lam):
    """(-1)^j C([k]-2, j) C(2 lam + [k], i)."""
    fk = int(Fraction(k).__floor__())
    return _sign(j) * binom(fk - 2, j) * binom(2 * lam + fk, i)


def _general_terms(k, lam):
    fk = int(k.__floor__())
    terms = []
    if k.denominator == 2:
        for i in range(2, fk + 1):
            j = fk - i
            g = Gamma(i, j, k, lam)
            c1 = g * (fk - j - 2)
            if c1:
                terms.append(BilinearTerm(c1, i, 0, j, 1, 1))
            c2 = -g * (2 * lam + fk - i)
            if c2:
                terms.append(BilinearTerm(c2, i, 1, j, 0, 0))
    else:
        for i in range(2, fk):
            j = fk - 1 - i
            g = Gamma(i, j, k - 1, lam)
            if g:
                terms.append(BilinearTerm(g, i, 1, j, 1, 1))
        for i in range(3, fk + 1):
            j = fk - i
            g = Gamma(i, j, k - 1, lam)
            if g:
                terms.append(BilinearTerm(-g, i, 0, j, 0, 0))
    return terms


def _short_terms(k, lam):
    if k == Fraction(5, 2):
        return [BilinearTerm(Fraction(1), 2, 1, 0, 0)]
    if k == 3:
        return [BilinearTerm(Fraction(2, 3) * lam, 3, 0, 0, 0),
                BilinearTerm(Fraction(-1), 2, 1, 0, 1, 1)]
    if k == Fraction(7, 2):
        return [BilinearTerm(2 * lam, 3, 1, 0, 0),
                BilinearTerm(Fraction(-3), 2, 1, 1, 0),
                BilinearTerm(Fraction(-1), 3, 0, 0, 1, 1)]
    return None


def transvectant_terms(k, lam, normalized=True):
    k = _as_half(k)
    lam = as_coeff(lam)
    if normalized:
        short = _short_terms(k, lam)
        if short is not None:
            return short
    return _general_terms(k, lam)


class Transvectant:
    """J_k^lambda as an applicable object; odd iff k is a semi-integer."""

    def __init__(self, k, lam, normalized=True):
        self.k = _as_half(k)
        self.lam = as_coeff(lam)
        self.normalized = normalized
        self.terms = transvectant_terms(self.k, self.lam, normalized)

    @property
    def parity(self):
        return 1 if self.k.denominator == 2 else 0

    def __call__(self, F, G):
        for f in (F, G):
            if not f.is_homogeneous():
                raise NonHomogeneousInput("transvectants take homogeneous arguments")
        pf = F.parity()
        out = F.__class__.zero(F.n, F.basis)
        fcache = {}
        gcache = {}
        for t in self.terms:
            fkey = (t.f_der, t.f_bar)
            if fkey not in fcache:
                f = F.deriv(t.f_der)
                fcache[fkey] = f.etabar() if t.f_bar else f
            gkey = (t.g_der, t.g_bar)
            if gkey not in gcache:
                g = G.deriv(t.g_der)
                gcache[gkey] = g.etabar() if t.g_bar else g
            prod = fcache[fkey] * gcache[gkey]
            if prod:
                out = out + prod.scale(t.coeff * _sign(t.f_sign * pf))
        return out

    def __repr__(self):
        return f"Transvectant(k={self.k}, lam={self.lam})"


def transvectant_apply(k, lam, F, G, normalized=True):
    return Transvectant(k, lam, normalized)(F, G)


def transvectant_ratio(k, lam):
    """Scalar c with general sum = c * short form (k in {5/2, 3, 7/2})."""
    k = _as_half(k)
    if k == Fraction(5, 2):
        return -2 * lam * binom(2 * lam + 2, 2)
    if k == 3:
        return -binom(2 * lam + 2, 2)
    if k == Fraction(7, 2):
        return -binom(2 * lam + 3, 2) * (2 * lam + 1) / 3
    raise UnsupportedOrder(f"no short form for k = {k}")


def theta_coefficient(gap, lam, normalized=True):
    """Theta^{p+gap}_p: coefficient of (-1)^{|F|+gap|G|} etabar(F'') etabar^{gap-3}(G) in pi^gap o J.

    Read off the term list; raises if the sign pattern depends on |F| (it never does).
    """
    k = Fraction(gap, 2) + 1
    want_power = gap - 3
    total = Fraction(0)
    for t in transvectant_terms(k, lam, normalized):
        if (t.f_der, t.f_bar) != (2, 1):
            continue
        power, s = t.g_etabar_power()
        if power != want_power:
            continue
        # exponent of (-1) in |F| must cancel against the target monomial's |F|
        if (t.f_sign + gap + 1) % 2:
            raise ValueError("sign pattern of the transvectant depends on |F|")
        total = total + t.coeff * s * _sign(gap)
    return total


# -- canonical coordinates of bilinear maps ---------------------------------
#
# Products etabar^a(F) etabar^b(G) are linearly dependent as functions
# (etabar(F) etabar(G) = 0 for even F, G of low degree, say), so bilinear maps
# are compared in canonical coordinates instead: for F = f theta^{|F|} and
# G = g theta^{|G|} a translation-invariant bilinear map B that lowers degree by
# M is sum_{c, u} b_{c,u} f^(u) g^(M-u) theta^c.

_COMPONENT_DEGREE = 7


def _falling(m, u):
    out = 1
    for t in range(u):
        out *= m - t
    return out


def bilinear_components(fn, degree=_COMPONENT_DEGREE):
    """{(|F|, |G|): {(c, u): b}} for a translation-invariant bilinear map ``fn``.

    Probes F = x^m theta^{|F|}, G = x^n theta^{|G|} with m, n < degree; the
    map must lower the x-degree by the same M on every probe of a class.
    """
    out = {}
    for pf in (0, 1):
        for pg in (0, 1):
            data = []
            drop = None
            for m in range(degree):
                F = SuperFunction.monomial(m, (1,) if pf else ())
                for n in range(degree):
                    R = fn(F, SuperFunction.monomial(n, (1,) if pg else ()))
                    for (d, _), _c in R.terms.items():
                        if drop is None:
                            drop = m + n - d
                        elif drop != m + n - d:
                            raise ValueError("bilinear map is not homogeneous in degree")
                    data.append((m, n, R))
            if drop is None:
                out[(pf, pg)] = {}
                continue
            cols = [(c, u) for c in (0, 1) for u in range(drop + 1)]
            system = LinearSystem(len(cols))
            for m, n, R in data:
                for c in (0, 1):
                    row = {}
                    for idx, (cc, u) in enumerate(cols):
                        if cc == c and u <= m and drop - u <= n:
                            row[idx] = Fraction(_falling(m, u) * _falling(n, drop - u))
                    key = (m + n - drop, (1,) if c else ())
                    system.add(row, R.terms.get(key, Fraction(0)))
            if system.inconsistent:
                raise ValueError("bilinear map is not translation invariant")
            if system.free_columns():
                raise ValueError("probe degree too low to fix the canonical coordinates")
            sol = system.solve()
            out[(pf, pg)] = {cols[i]: v for i, v in enumerate(sol) if v}
    return out
