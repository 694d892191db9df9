"""1-cocycles on osp(1|2) and K(1) with values in operator modules.

A cocycle is any callable sending a contact field X_F to a DiffOperator.
For a cocycle c of parity |c| the identity checked is

    c([X, Y]) = (-1)^{|X||c|} L_X c(Y) - (-1)^{|Y|(|X|+|c|)} L_Y c(X),

which is the usual one when c is even.
"""
from __future__ import annotations

from fractions import Fraction

from .coeffs import as_coeff
from .contact import ContactField, as_field, contact_bracket, osp_basis, spanning_fields
from .diffop import DiffOperator, module_action
from .errors import NonHomogeneousInput
from .superfunction import SuperFunction
from .transvectants import transvectant_terms

HALF = Fraction(1, 2)


def _sign(p):
    return -1 if p & 1 else 1


def _homogeneous(X):
    X = as_field(X)
    if not X.F.is_homogeneous():
        raise NonHomogeneousInput("cocycles are evaluated on homogeneous fields")
    return X


def _operator(slots, src, dst):
    z = SuperFunction.zero(1)
    top = max(slots) if slots else 0
    return DiffOperator([slots.get(i, z) for i in range(top + 1)], src, dst, top)


def upsilon(n, X):
    """Upsilon_n(X_F) = (-1)^{|F|}((n-1) eta^4(F) etabar^{2n-3} + eta^3(F) etabar^{2n-2})."""
    if n < 1:
        raise ValueError("Upsilon_n needs n >= 1")
    X = _homogeneous(X)
    F = X.F
    s = _sign(X.parity)
    slots = {2 * n - 2: F.d_dx().eta().scale(s)}
    if n > 1:
        slots[2 * n - 3] = F.deriv(2).scale((n - 1) * s)
    return _operator(slots, Fraction(1 - n, 2), Fraction(n, 2))


def Upsilon(n):
    """Upsilon_n as a cocycle callable, with its weights attached."""
    c = lambda X: upsilon(n, X)
    c.src, c.dst = Fraction(1 - n, 2), Fraction(n, 2)
    c.label = f"Upsilon_{n}"
    return c


# -- the explicit K(1)-cocycles ------------------------------------------------

def _explicit(label, src, dst, build):
    def c(X):
        X = _homogeneous(X)
        return _operator(build(X.F, _sign(X.parity)), src, dst)
    c.src, c.dst, c.label = as_coeff(src), as_coeff(dst), label
    return c


def upsilon_diag(lam):
    """X_F -> F' on F_lambda."""
    return _explicit(f"Upsilon_{{{lam},{lam}}}", lam, lam, lambda F, s: {0: F.d_dx()})


def upsilon_0_half():
    return _explicit("Upsilon_{0,1/2}", 0, HALF, lambda F, s: {0: F.d_dx().etabar()})


def upsilon_0_half_tilde():
    """G -> etabar(F' G)."""
    return _explicit("Upsilon~_{0,1/2}", 0, HALF,
                     lambda F, s: {0: F.d_dx().etabar(), 1: F.d_dx().scale(s)})


def upsilon_m_half_1():
    """G -> etabar(F') G' + (-1)^{|F|} F'' etabar(G)."""
    return _explicit("Upsilon_{-1/2,1}", -HALF, 1,
                     lambda F, s: {1: F.deriv(2).scale(s), 2: -F.d_dx().etabar()})


def upsilon_m1_3half():
    """G -> (-1)^{|F|}(F''' etabar(G) + 2 F'' etabar(G')) + 2 etabar(F'') G' + etabar(F') G''."""
    def build(F, s):
        return {1: F.deriv(3).scale(s), 2: F.deriv(2).etabar().scale(-2),
                3: F.deriv(2).scale(-2 * s), 4: F.d_dx().etabar()}
    return _explicit("Upsilon_{-1,3/2}", -1, Fraction(3, 2), build)


def explicit_cocycles():
    """The five cocycles listed alongside the transvectants (lambda = 0 for the first)."""
    return [upsilon_diag(0), upsilon_0_half(), upsilon_0_half_tilde(),
            upsilon_m_half_1(), upsilon_m1_3half()]


def transvectant_cocycle(k2, lam):
    """X_F -> J^lambda_{k2/2+1}(F, .) as an operator F_lambda -> F_{lambda+k2/2}."""
    lam = as_coeff(lam)
    terms = transvectant_terms(Fraction(k2, 2) + 1, lam)

    def build(F, s):
        slots = {}
        for t in terms:
            f = F.deriv(t.f_der)
            if t.f_bar:
                f = f.etabar()
            slot = 2 * t.g_der + t.g_bar
            c = t.coeff * _sign(t.g_der) * (s if t.f_sign else 1)
            if f:
                slots[slot] = slots.get(slot, SuperFunction.zero(1)) + f.scale(c)
        return slots
    return _explicit(f"J_{{{Fraction(k2, 2) + 1}}}^{lam}", lam, lam + Fraction(k2, 2), build)


def coboundary(A0):
    """X -> L_X(A0), the trivial cocycle of A0 (parity |A0|)."""
    def c(X):
        return module_action(X, A0)
    c.src, c.dst, c.label = A0.src, A0.dst, "coboundary"
    return c


# -- the check -------------------------------------------------------------------

def _fields(algebra, degree):
    if algebra == "osp":
        return osp_basis()
    if algebra in ("K1", "k1", "K(1)"):
        return spanning_fields(1, degree)
    raise ValueError(f"unknown algebra {algebra!r}; use 'osp' or 'K1'")


def _retarget(A, src, dst):
    return DiffOperator(A.coeffs, src, dst)


def cocycle_parity(c, fields):
    for X in fields:
        A = c(X)
        if not A.is_zero():
            return (A.parity() + X.parity) & 1
    return 0


def cocycle_check(c, algebra="osp", lam=None, mu=None, degree=6):
    """(True, None) or (False, (X, Y)) with the first failing spanning pair."""
    fields = _fields(algebra, degree)
    src = as_coeff(c.src if lam is None else lam)
    dst = as_coeff(c.dst if mu is None else mu)
    pc = cocycle_parity(c, fields)
    values = [_retarget(c(X), src, dst) for X in fields]
    for a, X in enumerate(fields):
        for b in range(a, len(fields)):
            Y = fields[b]
            left = _retarget(c(ContactField(contact_bracket(X.F, Y.F))), src, dst)
            right = (module_action(X, values[b]).scale(_sign(X.parity * pc))
                     - module_action(Y, values[a]).scale(_sign(Y.parity * (X.parity + pc))))
            if left != right:
                return False, (X, Y)
    return True, None

