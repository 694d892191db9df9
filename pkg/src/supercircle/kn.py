"""S^{1|n}: contact fields, operators, the Berezin integral and the star map.

Operators are written with the odd derivations etabar_i = d/dtheta_i - theta_i d/dx,
which satisfy etabar_i^2 = -d/dx and anticommute for i != j.  Since every
etabar_i^2 is the same central operator, the normal form keeps even powers on
etabar_1: a multi-index (l_1, e_2, ..., e_n) with e_i in {0, 1} stands for
etabar_1^{l_1} etabar_2^{e_2} ... etabar_n^{e_n}, and ``order2`` is its total
length.  Arbitrary multi-indices are accepted and reduced on construction.
"""
from __future__ import annotations

from fractions import Fraction

from .coeffs import as_coeff, format_coeff, parse_coeff
from .contact import ContactField, Density, as_field, lie_density_fn
from .diffop import DiffOperator, _simplify_weight
from .errors import (IndexOutOfRange, NonHomogeneousInput, PolyBasisNotIntegrable,
                     WeightMismatch, WeightSumMismatch, WrongWeight)
from .linalg import LinearSystem
from .superfunction import FOURIER, POLY, SuperFunction

HALF = Fraction(1, 2)


def _sign(p):
    return -1 if p & 1 else 1


def berezin_weight(n):
    """(2 - n)/2, the weight on which the Berezin integral is invariant."""
    return Fraction(2 - n, 2)


class ContactFieldN(ContactField):
    """X_F = F d/dx - 1/2 (-1)^{|F|} sum_i etabar_i(F) etabar_i on S^{1|n}."""

    __slots__ = ()

    def operator(self, weight):
        """The Lie derivative on weight-``weight`` densities as a DiffOperatorN."""
        return lie_operator_n(self, weight)


# -- normal form ----------------------------------------------------------------

def _normalize_index(index, n):
    index = tuple(int(v) for v in index)
    if len(index) != n:
        raise IndexOutOfRange(f"multi-index {index} has length {len(index)}, expected {n}")
    if any(v < 0 for v in index):
        raise ValueError(f"negative entry in multi-index {index}")
    head = index[0]
    tail = []
    for v in index[1:]:
        head += 2 * (v // 2)
        tail.append(v % 2)
    return (head,) + tuple(tail)


def _index_parity(index):
    return sum(index) & 1


def _gen_times_word(gen, index):
    """gen o word as (sign, new index); gen is 0 for d/dx or i for etabar_i."""
    if gen == 0:
        return -1, (index[0] + 2,) + index[1:]
    if gen == 1:
        return 1, (index[0] + 1,) + index[1:]
    k = gen - 1
    s = _sign(index[0] + sum(index[1:k]))
    tail = list(index[1:])
    if tail[k - 1]:
        tail[k - 1] = 0
        return s, (index[0] + 2,) + tuple(tail)
    tail[k - 1] = 1
    return s, (index[0],) + tuple(tail)


def _gen_apply(gen, F):
    return F.d_dx() if gen == 0 else F.etabar(gen)


def _word_gens(index):
    """Generators of a word, innermost (applied first) first."""
    gens = []
    for i in range(len(index), 1, -1):
        if index[i - 1]:
            gens.append(i)
    gens.extend([1] * index[0])
    return gens


class DiffOperatorN:
    """A(F alpha^src) = sum_l coeffs[l] * etabar_1^{l_1}...etabar_n^{l_n}(F) alpha^dst."""

    __slots__ = ("n", "basis", "coeffs", "src", "dst")

    def __init__(self, coeffs, src, dst, n=None, basis=None):
        coeffs = dict(coeffs)
        if n is None or basis is None:
            if not coeffs:
                raise ValueError("an empty operator needs explicit n and basis")
            first = next(iter(coeffs.values()))
            n = first.n if n is None else n
            basis = first.basis if basis is None else basis
        self.n = n
        self.basis = basis
        self.src = as_coeff(src) if isinstance(src, (int, str)) else src
        self.dst = as_coeff(dst) if isinstance(dst, (int, str)) else dst
        out = {}
        for index, a in coeffs.items():
            if a.n != n or a.basis != basis:
                raise ValueError("operator coefficients must share n and basis")
            key = _normalize_index(index, n)
            out[key] = out[key] + a if key in out else a
        self.coeffs = {k: a for k, a in out.items() if a}

    @classmethod
    def _raw(cls, n, basis, coeffs, src, dst):
        A = cls.__new__(cls)
        A.n, A.basis, A.src, A.dst = n, basis, src, dst
        A.coeffs = {k: a for k, a in coeffs.items() if a}
        return A

    @classmethod
    def multiplication(cls, a, src, dst=None):
        return cls({(0,) * a.n: a}, src, src if dst is None else dst, a.n, a.basis)

    @classmethod
    def identity(cls, weight, n=1, basis=POLY):
        return cls.multiplication(SuperFunction.const(1, n, basis), weight)

    @classmethod
    def generator(cls, gen, n, weight=0, basis=POLY):
        """d/dx (gen = 0) or etabar_gen as an operator of weight shift 0 or 1/2."""
        one = SuperFunction.const(1, n, basis)
        if gen == 0:
            return cls({(2,) + (0,) * (n - 1): -one}, weight, weight + 1, n, basis)
        index = [0] * n
        index[gen - 1] = 1
        return cls({tuple(index): one}, weight, weight + HALF, n, basis)

    @classmethod
    def from_diffop(cls, A):
        """The n = 1 operator of :mod:`diffop` in this normal form."""
        return cls({(i,): a for i, a in enumerate(A.coeffs)}, A.src, A.dst, 1, A.basis)

    def to_diffop(self):
        if self.n != 1:
            raise ValueError("only n = 1 operators convert to DiffOperator")
        top = self.order2
        z = SuperFunction.zero(1, self.basis)
        return DiffOperator([self.coeffs.get((i,), z) for i in range(top + 1)],
                            self.src, self.dst, top)

    # -- queries -----------------------------------------------------------
    @property
    def order2(self):
        return max((sum(k) for k in self.coeffs), default=0)

    def is_zero(self):
        return not self.coeffs

    def parity(self):
        ps = set()
        for index, a in self.coeffs.items():
            for (_, S) in a.terms:
                ps.add((len(S) + _index_parity(index)) & 1)
        if len(ps) > 1:
            raise NonHomogeneousInput("operator is not parity-homogeneous")
        return ps.pop() if ps else 0

    def _like(self, coeffs, src=None, dst=None):
        return DiffOperatorN._raw(self.n, self.basis, coeffs,
                                  self.src if src is None else src,
                                  self.dst if dst is None else dst)

    # -- linear structure -----------------------------------------------------
    def __add__(self, other):
        if not (self.src == other.src and self.dst == other.dst):
            raise WeightMismatch("cannot add operators between different density modules")
        out = dict(self.coeffs)
        for k, a in other.coeffs.items():
            out[k] = out[k] + a if k in out else a
        return self._like(out)

    def __neg__(self):
        return self._like({k: -a for k, a in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._like({k: a.scale(c) for k, a in self.coeffs.items()})

    def left_mul(self, f):
        return self._like({k: f * a for k, a in self.coeffs.items()})

    def with_weights(self, src, dst):
        return self._like(self.coeffs, src, dst)

    # -- action ----------------------------------------------------------------
    def apply_fn(self, F):
        out = SuperFunction.zero(F.n, F.basis)
        for index, a in self.coeffs.items():
            g = F
            for gen in _word_gens(index):
                g = _gen_apply(gen, g)
            out = out + a * g
        return out

    def apply(self, d):
        if not isinstance(d, Density):
            raise TypeError("apply expects a Density; use apply_fn for bare functions")
        if d.weight != self.src:
            raise WeightMismatch(f"density of weight {d.weight} fed to operator from {self.src}")
        return Density(self.apply_fn(d.F), self.dst)

    def __call__(self, d):
        return self.apply(d) if isinstance(d, Density) else self.apply_fn(d)

    def __eq__(self, other):
        if not isinstance(other, DiffOperatorN):
            return NotImplemented
        return (self.n == other.n and self.src == other.src and self.dst == other.dst
                and self.coeffs.keys() == other.coeffs.keys()
                and all(self.coeffs[k] == other.coeffs[k] for k in self.coeffs))

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"[{a}]η̄^{k}" for k, a in sorted(self.coeffs.items())) or "0"
        return f"DiffOperatorN({body}; {self.src} -> {self.dst})"

    def to_json(self):
        return {
            "n": self.n,
            "basis": self.basis,
            "lambda": format_coeff(self.src),
            "mu": format_coeff(self.dst),
            "terms": [{"index": list(k), "coeff": a.to_json()}
                      for k, a in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, data):
        n = data.get("n", 1)
        basis = data.get("basis", POLY)
        coeffs = {}
        for t in data.get("terms", []):
            a = SuperFunction.from_json(dict(t["coeff"], n=n, basis=basis))
            key = tuple(t["index"])
            coeffs[key] = coeffs[key] + a if key in coeffs else a
        weights = []
        for name, default in (("lambda", "λ"), ("mu", "μ")):
            w = data.get(name, default)
            weights.append(_simplify_weight(parse_coeff(w) if isinstance(w, str) else as_coeff(w)))
        return cls(coeffs, weights[0], weights[1], n, basis)


# -- composition ------------------------------------------------------------------

def _gen_left(gen, coeffs):
    """gen o (sum_v b_v v) in normal form, as a coefficient dict."""
    out = {}

    def add(k, a):
        if a:
            out[k] = out[k] + a if k in out else a

    for index, b in coeffs.items():
        add(index, _gen_apply(gen, b))
        s, new = _gen_times_word(gen, index)
        if gen:
            even, odd = b.homogeneous_parts()
            add(new, even.scale(s) - odd.scale(s))
        else:
            add(new, b.scale(s))
    return {k: a for k, a in out.items() if a}


def compose_n(A, B):
    """A o B; requires A.src == B.dst."""
    if A.src != B.dst:
        raise WeightMismatch(f"cannot compose: {A.src} != {B.dst}")
    out = {}
    cache = {}
    for index, a in A.coeffs.items():
        if index not in cache:
            c = B.coeffs
            for gen in _word_gens(index):
                c = _gen_left(gen, c)
            cache[index] = c
        for k, b in cache[index].items():
            p = a * b
            if p:
                out[k] = out[k] + p if k in out else p
    return DiffOperatorN._raw(A.n, A.basis, out, B.src, A.dst)


def lie_operator_n(X, weight, basis=None):
    """L^weight_{X_F} = weight F' - 1/2 (-1)^{|F|} sum_i etabar_i(F) etabar_i + F d/dx."""
    X = as_field(X)
    F = X.F
    n = F.n
    coeffs = {(2,) + (0,) * (n - 1): -F}
    if weight:
        coeffs[(0,) * n] = F.d_dx().scale(weight)
    s = -HALF * _sign(X.parity)
    for i in range(1, n + 1):
        index = [0] * n
        index[i - 1] = 1
        coeffs[tuple(index)] = F.etabar(i).scale(s)
    return DiffOperatorN(coeffs, weight, weight, n, F.basis)


def module_action_n(X, A):
    """L_X(A) = L^mu_X o A - (-1)^{|A||X|} A o L^lambda_X."""
    X = as_field(X)
    if A.is_zero():
        return A
    pa = A.parity()
    left = compose_n(lie_operator_n(X, A.dst), A)
    right = compose_n(A, lie_operator_n(X, A.src))
    return left - right.scale(_sign(pa * X.parity))


def lie_density_n(X, d, weight=None):
    """L_{X_F}(G) + weight F' G on S^{1|n}."""
    X = as_field(X)
    if not isinstance(d, Density):
        d = Density(d, 0 if weight is None else weight)
    elif weight is not None:
        d = Density(d.F, weight)
    return Density(lie_density_fn(X, d.F, d.weight), d.weight)


# -- embeddings used by the recursion in the number of odd variables ----------------

def extend(F, n):
    """F viewed as a function of n >= F.n odd variables."""
    if n < F.n:
        raise ValueError("cannot extend to fewer odd variables")
    return SuperFunction(n, F.basis, dict(F.terms))


def split_last(F):
    """(F1, F2) with F = F1 + F2 theta_n, both theta_n-free and in n - 1 variables."""
    n = F.n
    if n < 1:
        raise ValueError("no odd variable to split off")
    free, last = {}, {}
    for (m, S), c in F.terms.items():
        if S and S[-1] == n:
            last[(m, S[:-1])] = c
        else:
            free[(m, S)] = c
    return SuperFunction(n - 1, F.basis, free), SuperFunction(n - 1, F.basis, last)


def join_last(F1, F2):
    """F1 + F2 theta_n in n = F1.n + 1 variables."""
    n = F1.n + 1
    terms = dict(F1.terms)
    for (m, S), c in F2.terms.items():
        key = (m, S + (n,))
        terms[key] = terms[key] + c if key in terms else c
    return SuperFunction(n, F1.basis, terms)


# -- integration and pairing -----------------------------------------------------------

def berezin(d):
    """Mode-0 coefficient of theta_1...theta_n for a density of weight (2 - n)/2."""
    F = d.F if isinstance(d, Density) else d
    if isinstance(d, Density) and d.weight != berezin_weight(F.n):
        raise WrongWeight(f"the Berezin integral needs weight {berezin_weight(F.n)}, got {d.weight}")
    return berezin_fn(F)


def berezin_fn(F):
    if F.basis != FOURIER:
        raise PolyBasisNotIntegrable("polynomials in x are not periodic; use the Fourier basis")
    return F.top_coefficient().get(0, Fraction(0))


def pairing(phi, psi):
    """<phi, psi> = berezin(phi psi) for weights summing to (2 - n)/2."""
    n = phi.F.n
    if phi.weight + psi.weight != berezin_weight(n):
        raise WeightSumMismatch(
            f"weights {phi.weight} + {psi.weight} do not sum to {berezin_weight(n)}")
    return berezin_fn(phi.F * psi.F)


# -- star ------------------------------------------------------------------------------

def generator_adjoint(gen, n, basis=POLY):
    """Adjoint rules: d/dx* = -d/dx and etabar_i* = -etabar_i."""
    return DiffOperatorN.generator(gen, n, 0, basis).scale(-1)


def _word_star(index, n, basis):
    """(g_1 ... g_r)* = (-1)^{sum_{a<b}|g_a||g_b|} g_r* ... g_1* for a normal-form word."""
    gens = _word_gens(index)
    odd = sum(1 for g in gens if g)
    sign = _sign(odd * (odd - 1) // 2)
    op = DiffOperatorN.identity(0, n, basis)
    for g in gens:
        op = compose_n(op.with_weights(0, 0), generator_adjoint(g, n, basis).with_weights(0, 0))
    return op.scale(sign)


def star(A):
    """The adjoint with <A phi, psi> = (-1)^{|A||phi|} <phi, A* psi>."""
    A.parity()  # homogeneity check
    n, basis = A.n, A.basis
    w = berezin_weight(n)
    out = DiffOperatorN({}, 0, 0, n, basis)
    for index, a in A.coeffs.items():
        even, odd = a.homogeneous_parts()
        for part, p in ((even, 0), (odd, 1)):
            if not part:
                continue
            term = compose_n(_word_star(index, n, basis), DiffOperatorN.multiplication(part, 0))
            out = out + term.scale(_sign(p * _index_parity(index)))
    return out.with_weights(w - A.dst, w - A.src)


def pairing_identity_holds(A, degree=2, modes=None):
    """Check <A phi, psi> = (-1)^{|A||phi|} <phi, A* psi> on Fourier monomials."""
    return pairing_counterexample(A, degree, modes) is None


def pairing_counterexample(A, degree=2, modes=None):
    if A.basis != FOURIER:
        raise PolyBasisNotIntegrable("the pairing identity is checked in the Fourier basis")
    As = star(A)
    pa = A.parity()
    probes = SuperFunction.spanning(A.n, FOURIER, degree)
    for F in probes:
        phi = Density(F, A.src)
        AF = Density(A.apply_fn(F), A.dst)
        for G in probes:
            psi = Density(G, As.src)
            left = pairing(AF, psi)
            right = pairing(phi, Density(As.apply_fn(G), As.dst))
            if left != right * _sign(pa * F.parity()):
                return F, G
    return None


def derive_generator_adjoints(n, order2=2, degree=2):
    """Solve for each generator's adjoint among constant-coefficient words.

    Returns {gen: DiffOperatorN}; the solve is over words of total length at
    most ``order2`` with the pairing identity imposed on Fourier monomials of
    mode up to ``degree``.
    """
    words = sorted({_normalize_index(ix, n)
                    for total in range(order2 + 1)
                    for ix in _indices(n, total)})
    probes = SuperFunction.spanning(n, FOURIER, degree)
    one = SuperFunction.const(1, n, FOURIER)
    result = {}
    for gen in range(n + 1):
        G = DiffOperatorN.generator(gen, n, 0, FOURIER)
        pg = G.parity()
        cands = [w for w in words if _index_parity(w) == pg]
        system = LinearSystem(len(cands))
        for F in probes:
            left_f = G.apply_fn(F)
            for H in probes:
                rhs = berezin_fn(left_f * H)
                row = {}
                for u, w in enumerate(cands):
                    val = berezin_fn(F * DiffOperatorN({w: one}, 0, 0, n, FOURIER).apply_fn(H))
                    row[u] = val * _sign(pg * F.parity())
                system.add(row, rhs)
        if system.inconsistent or system.free_columns():
            raise ArithmeticError(f"adjoint of generator {gen} is not determined")
        sol = system.solve()
        result[gen] = DiffOperatorN({w: one.scale(c) for w, c in zip(cands, sol) if c},
                                    G.src, G.dst, n, FOURIER)
    return result


def _indices(n, total):
    if n == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _indices(n - 1, total - head):
            yield (head,) + rest


def star_equivariance_counterexample(A, fields):
    """First X with star(L_X A) != L_X(star A), or None."""
    As = star(A)
    for X in fields:
        if star(module_action_n(X, A)) != module_action_n(X, As):
            return X
    return None


def spanning_fields_n(n, degree, basis=POLY):
    return [ContactFieldN(F) for F in SuperFunction.spanning(n, basis, degree)]


def spanning_operators_n(n, order2, degree, src=0, dst=0, basis=POLY):
    """Single-term operators a etabar^l with a a basis monomial and |l| <= order2."""
    words = sorted({_normalize_index(ix, n)
                    for total in range(order2 + 1) for ix in _indices(n, total)})
    return [DiffOperatorN({w: a}, src, dst, n, basis)
            for w in words for a in SuperFunction.spanning(n, basis, degree)]

