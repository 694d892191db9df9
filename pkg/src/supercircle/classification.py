"""Isomorphism classes of the K(1)-modules D^k_{lambda,mu}.

Two solvers build a diagonal map tau_0, ..., tau_{2k} between symbol spaces:

* solve_generic equates the coupling coefficients beta_p^j (nonresonant delta),
* solve_resonant equates chi, epsilon and Xi read off the normal symbols.

Both results are checked against ``intertwiner_space``, which solves the
equivariance equations T(L_X A) = L_X T(A) directly for every even map T of
the form T(A)_p = sum_{i >= p} t_{i,p} eta^{i-p}(a_i).  That check does not
depend on any choice of symbol map.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .coeffs import LAM, MU, RationalCoeff, as_coeff, format_coeff, subs
from .contact import spanning_fields
from .diffop import DiffOperator, _simplify_weight, conjugate, module_action
from .errors import (PoleAtPoint, ResonanceMismatch, ResonantWeights, UnsupportedOrder,
                     WeightShiftMismatch)
from .linalg import LinearSystem
from .normal import chi_table, partner
from .superfunction import POLY, SuperFunction
from .symbols import SymbolVector, beta_extract, concrete_value, induced_action
from .symbols import is_resonant as _is_resonant

HALF = Fraction(1, 2)


def is_resonant(delta):
    """True iff delta is one of 1/2, 1, 3/2, ..."""
    return _is_resonant(delta)


def adjoint_pair(lam, mu):
    """Weights (1/2 - mu, 1/2 - lambda) of the adjoint module."""
    lam, mu = as_coeff(lam), as_coeff(mu)
    return _simplify_weight(HALF - mu), _simplify_weight(HALF - lam)


def is_self_adjoint(lam, mu):
    return as_coeff(lam) + as_coeff(mu) == HALF


def _order2(k):
    k = Fraction(k)
    if k < 0 or (2 * k).denominator != 1:
        raise UnsupportedOrder(f"k must be a nonnegative half-integer, got {k}")
    return int(2 * k)


def _weights(lam, mu, rho, nu):
    lam, mu, rho, nu = (_simplify_weight(as_coeff(w)) for w in (lam, mu, rho, nu))
    if _simplify_weight(nu - rho) != _simplify_weight(mu - lam):
        raise WeightShiftMismatch(
            f"nu - rho = {format_coeff(nu - rho)} differs from mu - lambda = {format_coeff(mu - lam)}")
    return lam, mu, rho, nu


# -- witnesses -----------------------------------------------------------------

class IsoWitness:
    """A diagonal map on symbols: tau[i] is a linear form in the free tau's.

    ``tau[i]`` maps free index f to a coefficient, so tau_i = sum_f c_f tau_f;
    the free tau's may take any nonzero values outside finitely many hyperplanes.
    """

    def __init__(self, k2, tau, source, target, method, verified=None):
        self.k2 = k2
        self.tau = [dict(t) for t in tau]
        self.source = source
        self.target = target
        self.method = method
        self.verified = verified

    @property
    def free(self):
        return sorted({f for t in self.tau for f in t if f is not None})

    def instantiate(self, values=None):
        """Concrete tau values; by default the free tau's are 1, 2, 3, ... or a shuffle of them."""
        if values is not None:
            return self._apply(values)
        free = self.free
        for shift in range(len(free) + 1):
            values = {f: Fraction(1 + (i + shift) % (len(free) + 1)) for i, f in enumerate(free)}
            out = self._apply(values)
            if all(out):
                return out
        raise ValueError("could not find nonzero values for the free parameters")

    def _apply(self, values):
        out = []
        for t in self.tau:
            v = Fraction(0)
            for f, c in t.items():
                v = v + c * values[f]
            out.append(_simplify_weight(v))
        return out

    def admits(self, values):
        """Is the concrete vector ``values`` one of the maps described by the forms?"""
        free = self.free
        system = LinearSystem(len(free))
        for t, v in zip(self.tau, values):
            system.add({free.index(f): c for f, c in t.items()}, as_coeff(v))
        return not system.inconsistent

    def normalized(self):
        """Forms with the top free tau set to 1 (the customary normalization)."""
        top = max(self.free) if self.free else None
        out = []
        for t in self.tau:
            out.append({f: c for f, c in t.items() if f != top})
            if top in t:
                out[-1][None] = t[top]
        return out

    def tau_strings(self, normalize=False, names=("λ", "ρ")):
        forms = self.normalized() if normalize else self.tau
        return [_form_str(t, names) for t in forms]

    def to_json(self, names=("λ", "ρ")):
        return {
            "source": [format_coeff(w) for w in self.source],
            "target": [format_coeff(w) for w in self.target],
            "tau": self.tau_strings(names=names),
            "tau_normalized": self.tau_strings(normalize=True, names=names),
            "method": self.method,
            "verified": self.verified,
        }

    def __repr__(self):
        return f"IsoWitness(tau={self.tau_strings()}, method={self.method!r})"


def _rename(c, names):
    s = format_coeff(c)
    if names != ("λ", "μ"):
        s = s.replace("μ", "\0").replace("λ", names[0]).replace("\0", names[1])
    return s


def _form_str(t, names):
    if not t:
        return "0"
    parts = []
    for f in sorted(t, key=lambda x: -1 if x is None else x):
        c = t[f]
        cs = _rename(c, names)
        if f is None:
            parts.append(cs)
        elif c == 1:
            parts.append(f"τ{f}")
        else:
            parts.append(f"({cs})·τ{f}")
    return " + ".join(parts)


def _solve_tau(k2, rows):
    """Homogeneous system in tau_0..tau_{2k}: None if some tau is forced to 0."""
    system = LinearSystem(k2 + 1)
    for row in rows:
        system.add(row, Fraction(0))
    free = system.free_columns()
    if not free:
        return None
    forms = [dict() for _ in range(k2 + 1)]
    for f in free:
        sol = system.solve({f: Fraction(1)})
        for i, v in enumerate(sol):
            v = _simplify_weight(v)
            if v:
                forms[i][f] = v
    if any(not t for t in forms):
        return None
    return forms


def _pair_row(p, j, c_src, c_dst):
    """tau_p c(lambda, mu) = tau_j c(rho, nu)."""
    row = {}
    if c_src:
        row[p] = c_src
    if c_dst:
        row[j] = row.get(j, 0) - c_dst
    return row


# -- generic weights -----------------------------------------------------------

@lru_cache(maxsize=None)
def beta_symbolic(p, j):
    """beta_p^j as a function of formal (lambda, mu)."""
    return beta_extract(p, j, LAM, MU)


def beta_at(p, j, lam, mu):
    b = beta_symbolic(p, j)
    return _simplify_weight(subs(as_coeff(b), lam, mu)) if isinstance(b, RationalCoeff) else b


def generic_constraints(k2, lam, mu, rho, nu):
    rows = []
    for j in range(3, k2 + 1):
        for p in range(0, j - 2):
            rows.append(((p, j), _pair_row(p, j, beta_at(p, j, lam, mu), beta_at(p, j, rho, nu))))
    return rows


def solve_generic(k, lam, mu, rho, nu, verify=True):
    """Diagonal isomorphism D^k_{lambda,mu} -> D^k_{rho,nu} from the beta system, or None."""
    k2 = _order2(k)
    if k2 > 6:
        raise UnsupportedOrder("solve_generic handles k <= 3")
    lam, mu, rho, nu = _weights(lam, mu, rho, nu)
    if is_resonant(mu - lam):
        raise ResonantWeights(f"mu - lambda = {format_coeff(mu - lam)} is resonant; use solve_resonant")
    forms = _solve_tau(k2, [row for _, row in generic_constraints(k2, lam, mu, rho, nu)])
    if forms is None:
        return None
    w = IsoWitness(k2, forms, (lam, mu), (rho, nu), "beta")
    if verify and all(concrete_value(x) is not None for x in (lam, mu, rho, nu)):
        w.verified = verify_diagonal(k2, lam, mu, rho, nu, w.instantiate())
    return w


_VERIFY_DEGREE = 4


def _verify_fields():
    return spanning_fields(1, _VERIFY_DEGREE)


def verify_diagonal(k2, lam, mu, rho, nu, tau):
    """diag(tau) intertwines the induced actions on symbol probes of order2 <= k2."""
    delta = mu - lam
    fields = _verify_fields()
    for j in range(k2 + 1):
        for P in SuperFunction.spanning(1, POLY, _VERIFY_DEGREE):
            S = SymbolVector.single(j, P, delta, k2)
            TS = SymbolVector.single(j, P.scale(tau[j]), delta, k2)
            for X in fields:
                left = induced_action(X, S, lam, mu)
                right = induced_action(X, TS, rho, nu)
                for p in range(k2 + 1):
                    if left[p].scale(tau[p]) != right[p]:
                        return False
    return True


# -- resonant weights ----------------------------------------------------------

@lru_cache(maxsize=None)
def resonant_coefficients(delta, k2):
    """[(kind, p, j, c(lambda))] for the chi, epsilon and Xi slots (formal lambda)."""
    delta = Fraction(delta)
    table = chi_table(LAM, LAM + delta, Fraction(k2, 2))
    out = []
    for (p, j), c in sorted(table["chi"].items()):
        out.append(("chi", p, j, c))
    for p, c in sorted(table["epsilon"].items()):
        out.append(("epsilon", p, partner(p, delta), c))
    for p, c in sorted(table["Xi"].items()):
        out.append(("Xi", p, p + 5, c))
    return tuple(out)


def _at_lambda(c, lam):
    """Evaluate a coefficient of lambda alone (mu = lambda + delta) at ``lam``."""
    return _simplify_weight(subs(as_coeff(c), lam, Fraction(0)))


def resonant_constraints(k2, lam, rho, delta):
    rows = []
    for kind, p, j, c in resonant_coefficients(delta, k2):
        rows.append(((kind, p, j), _pair_row(p, j, _at_lambda(c, lam), _at_lambda(c, rho))))
    return rows


def solve_resonant(k, lam, mu, rho, nu, verify=True):
    """Diagonal isomorphism in normal symbols from the chi/epsilon/Xi system, or None."""
    k2 = _order2(k)
    lam, mu, rho, nu = _weights(lam, mu, rho, nu)
    delta = concrete_value(mu - lam)
    if delta is None or not is_resonant(delta) or 2 * delta > k2:
        raise ResonanceMismatch(f"mu - lambda = {format_coeff(mu - lam)} is not in {{1/2, ..., k}}")
    try:
        rows = [row for _, row in resonant_constraints(k2, lam, rho, delta)]
    except PoleAtPoint:
        return _from_intertwiners(k2, lam, mu, rho, nu)
    forms = _solve_tau(k2, rows)
    if forms is None:
        return None
    w = IsoWitness(k2, forms, (lam, mu), (rho, nu), "chi-epsilon")
    if verify and all(concrete_value(x) is not None for x in (lam, rho)):
        w.verified = intertwiner_space(k2, lam, mu, rho, nu).admits(w.instantiate())
    return w


def _from_intertwiners(k2, lam, mu, rho, nu):
    space = intertwiner_space(k2, lam, mu, rho, nu)
    forms = space.diagonal_forms()
    if forms is None:
        return None
    return IsoWitness(k2, forms, (lam, mu), (rho, nu), "intertwiner", verified=True)


def solve(k, lam, mu, rho, nu, verify=True):
    """Dispatch on the shift delta.

    A resonant shift above k has no normal-symbol band; its beta system is used
    when the beta coefficients are finite there, the direct intertwiners otherwise.
    """
    k2 = _order2(k)
    lam, mu, rho, nu = _weights(lam, mu, rho, nu)
    d = concrete_value(mu - lam)
    if d is None or not is_resonant(d):
        return solve_generic(k, lam, mu, rho, nu, verify)
    if 2 * d <= k2:
        return solve_resonant(k, lam, mu, rho, nu, verify)
    try:
        rows = [row for _, row in generic_constraints(k2, lam, mu, rho, nu)]
    except PoleAtPoint:
        return _from_intertwiners(k2, lam, mu, rho, nu)
    forms = _solve_tau(k2, rows)
    if forms is None:
        return None
    w = IsoWitness(k2, forms, (lam, mu), (rho, nu), "beta")
    if verify:
        w.verified = intertwiner_space(k2, lam, mu, rho, nu).admits(w.instantiate())
    return w


# -- direct intertwiners -------------------------------------------------------

class IntertwinerSpace:
    """Solutions T(A)_p = sum_{i >= p} t^pi_{i,p} eta^{i-p}(a_i) of T L_X = L_X T.

    pi is the parity of A; the unknowns for the two parities are independent
    a priori and tied together by the odd fields.
    """

    def __init__(self, k2, unknowns, system):
        self.k2 = k2
        self.unknowns = unknowns
        self.index = {u: c for c, u in enumerate(unknowns)}
        self.system = system
        self.basis = [system.solve({f: Fraction(1)}) for f in system.free_columns()]

    @property
    def dimension(self):
        return len(self.basis)

    def diagonal(self, parity=0):
        """tau_p as vectors over the solution basis."""
        return [[b[self.index[(parity, p, p)]] for b in self.basis] for p in range(self.k2 + 1)]

    def invertible(self):
        diag = self.diagonal(0) + self.diagonal(1)
        return bool(self.basis) and all(any(v for v in row) for row in diag)

    def diagonal_forms(self):
        """The even-parity diagonal as forms in free tau's, or None if never invertible."""
        if not self.invertible():
            return None
        rows = self.diagonal(0)
        # re-express in terms of a maximal independent set of diagonal entries
        system = LinearSystem(len(self.basis))
        chosen = []
        for p in range(self.k2, -1, -1):
            if system.add({c: v for c, v in enumerate(rows[p]) if v}, Fraction(0)):
                chosen.append(p)
        forms = []
        for p in range(self.k2 + 1):
            # solve rows[p] = sum_q a_q rows[q] over the chosen q
            coeffs = _express(rows[p], [rows[q] for q in chosen])
            forms.append({q: a for q, a in zip(chosen, coeffs) if a} if coeffs is not None
                         else {p: Fraction(1)})
        return forms

    def admits(self, tau):
        """Is there a solution with these even-parity diagonal values?"""
        system = LinearSystem(len(self.basis))
        for p, v in enumerate(tau):
            system.add({c: x for c, x in enumerate(self.diagonal(0)[p]) if x}, v)
        return not system.inconsistent


def _express(target, vectors):
    n = len(vectors)
    system = LinearSystem(n)
    for r in range(len(target)):
        system.add({c: vec[r] for c, vec in enumerate(vectors) if vec[r]}, target[r])
    if system.inconsistent:
        return None
    return system.solve()


def _eta_power(a, m):
    for _ in range(m):
        a = a.eta()
        if not a:
            break
    return a


@lru_cache(maxsize=256)
def _cached_space(k2, lam, mu, rho, nu, field_degree):
    unknowns = [(par, i, p) for par in (0, 1) for i in range(k2 + 1) for p in range(i + 1)]
    index = {u: c for c, u in enumerate(unknowns)}
    system = LinearSystem(len(unknowns))
    fields = spanning_fields(1, field_degree)
    for i in range(k2 + 1):
        for a in SuperFunction.spanning(1, POLY, k2 + 2):
            A = DiffOperator.monomial(i, a, lam, mu, k2)
            par = A.parity()
            images = {}
            for p in range(i + 1):
                c = _eta_power(a, i - p)
                if c:
                    images[p] = DiffOperator.monomial(p, c, rho, nu, k2)
            for X in fields:
                LA = module_action(X, A)
                eqs = {}

                def put(slot, f, u, sign):
                    for m, v in f.terms.items():
                        row = eqs.setdefault((slot, m), {})
                        row[u] = row.get(u, 0) + sign * v
                lpar = (par + X.parity) & 1
                for iq, b in enumerate(LA.coeffs):
                    if not b:
                        continue
                    for p in range(iq + 1):
                        c = _eta_power(b, iq - p)
                        if c:
                            put(p, c, index[(lpar, iq, p)], 1)
                for p, TA in images.items():
                    LT = module_action(X, TA)
                    for q, c in enumerate(LT.coeffs):
                        if c:
                            put(q, c, index[(par, i, p)], -1)
                for row in eqs.values():
                    system.add(row, Fraction(0))
    return IntertwinerSpace(k2, unknowns, system)


def intertwiner_space(k2, lam, mu, rho, nu, field_degree=4):
    lam, mu, rho, nu = _weights(lam, mu, rho, nu)
    return _cached_space(k2, lam, mu, rho, nu, field_degree)


def isomorphic(k, lam, mu, rho, nu):
    """Direct test: does an invertible intertwiner exist?"""
    return intertwiner_space(_order2(k), lam, mu, rho, nu).invertible()


def adjoint_is_equivariant(k, lam, mu, degree=3):
    """The conjugation map D_{lambda,mu} -> D_{1/2-mu,1/2-lambda} commutes with K(1)."""
    k2 = _order2(k)
    fields = spanning_fields(1, degree + 1)
    for i in range(k2 + 1):
        for a in SuperFunction.spanning(1, POLY, degree):
            A = DiffOperator.monomial(i, a, lam, mu, k2)
            for X in fields:
                if conjugate(module_action(X, A)) != module_action(X, conjugate(A)):
                    return False
    return True


# -- Table 1 ---------------------------------------------------------------------

class ModuleClass:
    """Exceptional modules of order k: the scanned families and the grid comparison."""

    def __init__(self, k, status, families=(), loci=None, comparison=None):
        self.k = Fraction(k)
        self.status = status
        self.families = list(families)
        self.loci = loci or {}
        self.comparison = comparison or {}

    def to_json(self):
        return {
            "k": format_coeff(self.k),
            "status": self.status,
            "families": self.families,
            "loci": self.loci,
            "comparison": self.comparison,
        }


def weight_grid(max_den=4, bound=3):
    """Rationals with denominator <= max_den in [-bound, bound], sorted."""
    pts = {Fraction(n, d) for d in range(1, max_den + 1)
           for n in range(-bound * d, bound * d + 1)}
    return sorted(pts)


# A reference weight off every zero locus met on the grid.
REFERENCE_RHO = Fraction(7, 19)

# The literal table, as predicates on (k2, lambda, mu); adjoints are added below.
_LITERAL = {
    1: [("(0, 1/2)", lambda l, m: l == 0 and m == HALF)],
    2: [("(0, 1/2)", lambda l, m: l == 0 and m == HALF)],
    3: [("(0, μ)", lambda l, m: l == 0),
        ("(-1/2, 1)", lambda l, m: l == -HALF and m == 1)],
    4: [("(0, μ)", lambda l, m: l == 0),
        ("(λ, 1/2 - λ)", lambda l, m: l + m == HALF),
        ("(λ, λ + 2)", lambda l, m: m - l == 2)],
}


def literal_exceptional(k, lam, mu):
    """Names of the listed families containing (lambda, mu) or its adjoint."""
    k2 = _order2(k)
    if k2 > 4:
        raise UnsupportedOrder("the table covers k <= 2")
    alam, amu = adjoint_pair(lam, mu)
    return [name for name, pred in _LITERAL.get(k2, [])
            if pred(lam, mu) or pred(alam, amu)]


def is_exceptional(k, lam, mu, reference=REFERENCE_RHO):
    """Not isomorphic to the module with the same shift at a generic reference weight."""
    lam, mu = Fraction(lam), Fraction(mu)
    if lam == reference:
        return False
    rho = reference
    return solve(k, lam, mu, rho, rho + (mu - lam), verify=False) is None


def _scan(k, grid):
    _order2(k)
    rows = []
    for lam in grid:
        for mu in grid:
            rows.append((lam, mu, is_exceptional(k, lam, mu), bool(literal_exceptional(k, lam, mu))))
    return rows


def zero_loci(k):
    """Factored zero loci of the coupling coefficients that can obstruct an isomorphism."""
    k2 = _order2(k)
    out = {"generic": {}, "resonant": {}}
    for j in range(3, k2 + 1):
        for p in range(0, j - 2):
            out["generic"][f"beta_{p}^{j}"] = _factors(beta_symbolic(p, j))
    for d2 in range(1, k2 + 1):
        delta = Fraction(d2, 2)
        for kind, p, j, c in resonant_coefficients(delta, k2):
            out["resonant"][f"delta={format_coeff(delta)}: {kind}_{p}^{j}"] = _factors(c)
    return out


def _factors(c):
    """Irreducible factors of the numerator of c (constants dropped), as strings."""
    import sympy
    c = as_coeff(c)
    if not isinstance(c, RationalCoeff):
        return [] if c else ["0"]
    lam, mu = sympy.symbols("λ μ")
    expr = sympy.sympify(str(c.num).replace("^", "**"), locals={"λ": lam, "μ": mu})
    _, facs = sympy.factor_list(expr)
    return sorted(f"{sympy.sstr(f)} = 0" for f, _ in facs)


def factored(text, names=("λ", "μ")):
    """A rational function given as text, cancelled and factored (display only)."""
    import sympy
    syms = {nm: sympy.Symbol(nm) for nm in names}
    expr = sympy.sympify(text.replace("^", "**"), locals=syms)
    return sympy.sstr(sympy.factor(sympy.cancel(expr)))


def table1(k, grid=None, reference=REFERENCE_RHO):
    """Exceptional modules of order k from a grid scan, compared with the literal table."""
    k = Fraction(k)
    k2 = _order2(k)
    if k2 > 4:
        return ModuleClass(k, "singular", ["all (λ, μ)"],
                           comparison={"note": "no isomorphisms beyond the adjoint for k > 2"})
    grid = weight_grid() if grid is None else grid
    rows = _scan(k, grid)
    comparison = {"generic": {"agree": 0, "scan_only": [], "table_only": []},
                  "resonant": {"agree": 0, "scan_only": [], "table_only": []}}
    for lam, mu, scan, lit in rows:
        part = comparison["resonant" if is_resonant(mu - lam) else "generic"]
        if scan == lit:
            part["agree"] += 1
        elif scan:
            part["scan_only"].append([format_coeff(lam), format_coeff(mu)])
        else:
            part["table_only"].append([format_coeff(lam), format_coeff(mu)])
    families = [name for name, _ in _LITERAL.get(k2, [])]
    return ModuleClass(k, "generic-family", families, zero_loci(k), comparison)


def verify_table1(k, grid=None):
    """True iff the scan matches the literal table on nonresonant grid points."""
    c = table1(k, grid)
    g = c.comparison["generic"]
    return not g["scan_only"] and not g["table_only"]
