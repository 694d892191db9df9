"""Verification suites behind ``verify-all``.

Each suite returns a :class:`SuiteResult` with pass counts and the first few
failures.  Suites are pure and deterministic; the degree bounds the spanning
monomials they feed in.
"""
from __future__ import annotations

from fractions import Fraction

from .coeffs import LAM, MU
from .contact import ContactField, contact_bracket, osp_basis, spanning_fields
from .diffop import action_closed, module_action, spanning_operators
from .superfunction import FOURIER, POLY, SuperFunction

HALF = Fraction(1, 2)
_MAX_FAILURES = 5


class SuiteResult:
    def __init__(self, name):
        self.name = name
        self.passed = 0
        self.total = 0
        self.failures = []

    def check(self, ok, label):
        self.total += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < _MAX_FAILURES:
            self.failures.append(label)
        return ok

    @property
    def ok(self):
        return self.passed == self.total

    def to_json(self):
        return {"passed": self.passed, "total": self.total, "ok": self.ok,
                "failures": list(self.failures)}


def _sign(p):
    return -1 if p & 1 else 1


def suite_contact(degree):
    """[X_F, X_G] = X_{F,G} and super-Jacobi on spanning monomials."""
    r = SuiteResult("contact")
    fns = SuperFunction.spanning(1, POLY, degree)
    for a, F in enumerate(fns):
        X = ContactField(F).vector_field()
        for G in fns[a:]:
            Y = ContactField(G).vector_field()
            ok = X.bracket(Y) == ContactField(contact_bracket(F, G)).vector_field()
            r.check(ok, f"bracket {F} , {G}")
    small = SuperFunction.spanning(1, POLY, min(degree, 3))
    for F in small:
        for G in small:
            for H in small:
                pf, pg, ph = F.parity(), G.parity(), H.parity()
                total = (contact_bracket(F, contact_bracket(G, H)).scale(_sign(pf * ph))
                         + contact_bracket(G, contact_bracket(H, F)).scale(_sign(pg * pf))
                         + contact_bracket(H, contact_bracket(F, G)).scale(_sign(ph * pg)))
                r.check(total.is_zero(), f"jacobi {F} , {G} , {H}")
    return r


def suite_lemma(degree):
    """Closed-form action against the composition definition, formal weights."""
    r = SuiteResult("lemma")
    fields = spanning_fields(1, min(degree, 4))
    for order2 in range(5):
        for A in spanning_operators(order2, 2, LAM, MU):
            for X in fields:
                r.check(action_closed(X, A) == module_action(X, A), f"order2={order2} {A} {X}")
    return r


def suite_symbolize(degree):
    """symbolize intertwines the osp action, and quantize inverts it (formal weights)."""
    from .symbols import density_action, quantize, symbolize
    r = SuiteResult("symbolize")
    for order2 in range(5):
        for A in spanning_operators(order2, min(degree, 3), LAM, MU):
            S = symbolize(A)
            r.check(quantize(S, LAM, MU) == A, f"round trip {A}")
            for X in osp_basis():
                r.check(symbolize(module_action(X, A)) == density_action(X, S),
                        f"equivariance {A} {X}")
    return r


def suite_beta(degree):
    """beta_extract against the six closed forms."""
    from .symbols import beta_closed, beta_extract
    r = SuiteResult("beta")
    for p, j in ((0, 3), (0, 4), (1, 4), (0, 5), (1, 5), (2, 5)):
        r.check(beta_extract(p, j) == beta_closed(p, j), f"beta_{p}^{j}")
    return r


def suite_normal(degree):
    """Deformed action is a homomorphism and normal symbols intertwine it."""
    from .normal import build_xi, deformed_action, normal_symbolize
    from .symbols import SymbolVector
    r = SuiteResult("normal")
    osp = osp_basis()
    for d2 in range(1, 5):
        delta = Fraction(d2, 2)
        for k2 in range(d2, 5):
            table = build_xi(LAM, LAM + delta, Fraction(k2, 2))
            M = table.module()
            probes = [SymbolVector.single(j, P, delta, k2)
                      for j in range(k2 + 1) for P in SuperFunction.spanning(1, POLY, 2)]
            for a, X in enumerate(osp):
                for Y in osp[a:]:
                    XY = ContactField(contact_bracket(X.F, Y.F))
                    s = _sign(X.parity * Y.parity)
                    for S in probes:
                        left = deformed_action(M, XY, S)
                        right = (deformed_action(M, X, deformed_action(M, Y, S))
                                 - deformed_action(M, Y, deformed_action(M, X, S)).scale(s))
                        r.check(left == right, f"hom delta={delta} k2={k2} {X} {Y}")
            for A in spanning_operators(k2, min(degree, 3), LAM, LAM + delta):
                N = normal_symbolize(A, table)
                for X in osp:
                    r.check(normal_symbolize(module_action(X, A), table) == deformed_action(M, X, N),
                            f"equivariance delta={delta} k2={k2} {A} {X}")
    return r


def suite_corollary(degree):
    """The chi relation between Theta, chi and varsigma for j <= 2k <= 4."""
    from .normal import corollary_sides
    r = SuiteResult("corollary")
    for d2 in range(1, 5):
        delta = Fraction(d2, 2)
        for k2 in range(d2, 5):
            for j in range(3, k2 + 1):
                for p in range(0, j - 2):
                    left, right = corollary_sides(p, j, LAM, LAM + delta, Fraction(k2, 2))
                    r.check(left == right, f"delta={delta} k2={k2} (p, j)=({p}, {j})")
    return r


def suite_cocycles(degree):
    """Upsilon_n on osp(1|2) and the five explicit cocycles on K(1)."""
    from .cocycles import Upsilon, cocycle_check, explicit_cocycles
    r = SuiteResult("cocycles")
    for n in (1, 2, 3):
        ok, _ = cocycle_check(Upsilon(n), "osp")
        r.check(ok, f"Upsilon_{n} on osp")
    for c in explicit_cocycles():
        ok, _ = cocycle_check(c, "K1", degree=degree)
        r.check(ok, f"{c.label} on K1")
    return r


def suite_conjugate(degree):
    """The conjugation map commutes with the K(1) action."""
    from .classification import adjoint_is_equivariant
    r = SuiteResult("conjugate")
    for k2 in range(6):
        k = Fraction(k2, 2)
        r.check(adjoint_is_equivariant(k, Fraction(1, 3), Fraction(1, 3) + Fraction(2, 7),
                                       degree=min(degree, 3)), f"k={k}")
    return r


def suite_classification(degree):
    """Generic witnesses are diagonal intertwiners; k = 5/2 has none off the adjoint."""
    from .classification import solve_generic
    r = SuiteResult("classification")
    lam, mu, rho = Fraction(1, 3), Fraction(5, 7), Fraction(-2, 5)
    nu = rho + mu - lam
    for k2 in range(5):
        w = solve_generic(Fraction(k2, 2), lam, mu, rho, nu)
        r.check(w is not None and w.verified, f"k={Fraction(k2, 2)} witness")
    r.check(solve_generic(Fraction(5, 2), lam, mu, rho, nu, verify=False) is None, "k=5/2 none")
    return r


def suite_resonant(degree):
    """The chi/epsilon/Xi system agrees with the direct intertwiner computation."""
    from .classification import solve_resonant
    r = SuiteResult("resonant")
    lam, rho = Fraction(2, 5), Fraction(-3, 7)
    for d2 in range(1, 5):
        delta = Fraction(d2, 2)
        for k2 in range(d2, 5):
            w = solve_resonant(Fraction(k2, 2), lam, lam + delta, rho, rho + delta)
            r.check(w is not None and w.verified, f"delta={delta} k2={k2}")
    return r


def suite_kn(degree):
    """Berezin invariance, star pairing identity, involution and equivariance."""
    from .contact import Density
    from .kn import (ContactFieldN, berezin, berezin_weight, lie_density_n,
                     pairing_counterexample, spanning_fields_n, spanning_operators_n,
                     star, star_equivariance_counterexample)
    r = SuiteResult("kn")
    m = min(degree, 2)
    for n in (1, 2, 3):
        w = berezin_weight(n)
        for H in SuperFunction.spanning(n, FOURIER, m):
            for P in SuperFunction.spanning(n, FOURIER, m):
                ok = berezin(lie_density_n(ContactFieldN(H), Density(P, w))) == 0
                r.check(ok, f"berezin n={n} {H} {P}")
    for n in (1, 2):
        fields = spanning_fields_n(n, 1, FOURIER)
        for A in spanning_operators_n(n, 2, 1, basis=FOURIER):
            A = A.with_weights(Fraction(1, 3), Fraction(1, 3) + Fraction(A.order2, 2))
            r.check(star(star(A)) == A, f"involution n={n} {A}")
            r.check(pairing_counterexample(A, 1) is None, f"pairing n={n} {A}")
            r.check(star_equivariance_counterexample(A, fields) is None, f"equivariance n={n} {A}")
    return r


SUITES = {
    "beta": suite_beta,
    "classification": suite_classification,
    "cocycles": suite_cocycles,
    "conjugate": suite_conjugate,
    "contact": suite_contact,
    "corollary": suite_corollary,
    "kn": suite_kn,
    "lemma": suite_lemma,
    "normal": suite_normal,
    "resonant": suite_resonant,
    "symbolize": suite_symbolize,
}


def run_suites(degree, names=None):
    """{name: SuiteResult} in sorted name order."""
    names = sorted(SUITES) if names is None else sorted(names)
    return {name: SUITES[name](degree) for name in names}

