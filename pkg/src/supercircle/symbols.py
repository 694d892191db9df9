"""The osp(1|2)-equivariant symbol map, its inverse, and the induced K(1)-action on symbols."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .coeffs import LAM, MU, RationalCoeff, as_coeff, binom, format_coeff, parse_coeff
from .contact import as_field, lie_density_fn
from .diffop import DiffOperator, _simplify_weight, module_action
from .errors import ResonantDenominator, ResonantWeights, UnsupportedIndexPair
from .superfunction import POLY, SuperFunction
from .transvectants import Transvectant

HALF = Fraction(1, 2)


def _sign(p):
    return -1 if p & 1 else 1


def concrete_value(c):
    """Fraction value of a constant coefficient, or None if it depends on lambda, mu."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, RationalCoeff) and c.is_constant():
        return c.constant_value()
    return None


def is_resonant(delta):
    """True iff delta is a concrete element of (1/2)N minus {0}."""
    d = concrete_value(delta)
    return d is not None and d > 0 and (2 * d).denominator == 1


def _check_nonresonant(lam, mu):
    if is_resonant(mu - lam):
        raise ResonantWeights(f"mu - lambda = {format_coeff(mu - lam)} is resonant")


def gamma(n, k, lam=LAM, mu=MU):
    """gamma_n^k: the coefficient of eta^n(a) in the symbol of a etabar^k."""
    if not 0 <= n <= k:
        raise ValueError(f"gamma needs 0 <= n <= k, got n={n}, k={k}")
    if n == 0:
        return Fraction(1)
    lam, mu = as_coeff(lam), as_coeff(mu)
    delta = mu - lam
    e = 1 if (n + k) % 2 == 0 else -1
    b1 = binom(k // 2, (2 * n + 1 - e) // 4)
    b2 = binom((k - 1) // 2 + 2 * lam, (2 * n + 1 + e) // 4)
    den = binom(2 * delta + n - k - 1, (n + 1) // 2)
    if not den:
        raise ResonantDenominator(f"gamma_{n}^{k} has a vanishing denominator at delta = {delta}")
    return _sign((n + 1) // 2) * b1 * b2 / den


class SymbolVector:
    """(P_0, ..., P_{2k}); entry i stands for Pi^i(P_i alpha^{delta - i/2})."""

    __slots__ = ("entries", "delta")

    def __init__(self, entries, delta):
        self.entries = tuple(entries)
        self.delta = _simplify_weight(as_coeff(delta))

    @classmethod
    def zero(cls, k2, delta, basis=POLY):
        return cls([SuperFunction.zero(1, basis)] * (k2 + 1), delta)

    @classmethod
    def single(cls, j, P, delta, k2=None):
        k2 = j if k2 is None else k2
        z = SuperFunction.zero(P.n, P.basis)
        return cls([P if i == j else z for i in range(k2 + 1)], delta)

    @property
    def k2(self):
        return len(self.entries) - 1

    def weight(self, i):
        return self.delta - Fraction(i, 2)

    def pi_flags(self):
        return [i & 1 for i in range(self.k2 + 1)]

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self):
        return len(self.entries)

    def _pad(self, other):
        top = max(self.k2, other.k2)
        z = SuperFunction.zero(1, self.entries[0].basis)
        a = list(self.entries) + [z] * (top - self.k2)
        b = list(other.entries) + [z] * (top - other.k2)
        return a, b

    def __add__(self, other):
        a, b = self._pad(other)
        return SymbolVector([x + y for x, y in zip(a, b)], self.delta)

    def __sub__(self, other):
        a, b = self._pad(other)
        return SymbolVector([x - y for x, y in zip(a, b)], self.delta)

    def scale(self, c):
        return SymbolVector([P.scale(c) for P in self.entries], self.delta)

    def __eq__(self, other):
        if not isinstance(other, SymbolVector):
            return NotImplemented
        if self.delta != other.delta:
            return False
        a, b = self._pad(other)
        return all(x == y for x, y in zip(a, b))

    __hash__ = None

    def __repr__(self):
        body = ", ".join(str(P) for P in self.entries)
        return f"SymbolVector([{body}], delta={format_coeff(self.delta)})"

    def to_json(self):
        return {
            "delta": format_coeff(self.delta),
            "k2": self.k2,
            "entries": [P.to_json() for P in self.entries],
        }

    @classmethod
    def from_json(cls, data):
        d = data.get("delta", "μ - λ")
        d = parse_coeff(d) if isinstance(d, str) else as_coeff(d)
        return cls([SuperFunction.from_json(e) for e in data["entries"]], d)


def symbolize(A):
    """sigma_{lambda,mu}(A): P_{k-n} += gamma_n^k eta^n(a_k)."""
    lam, mu = A.src, A.dst
    _check_nonresonant(lam, mu)
    basis = A.basis
    out = [SuperFunction.zero(1, basis) for _ in range(A.order2 + 1)]
    for k, a in enumerate(A.coeffs):
        if not a:
            continue
        d = a
        for n in range(k + 1):
            if n:
                d = d.eta()
            if d:
                out[k - n] = out[k - n] + d.scale(gamma(n, k, lam, mu))
    return SymbolVector(out, mu - lam)


def quantize(S, lam=LAM, mu=MU):
    """Inverse of :func:`symbolize`, by back-substitution from the top entry."""
    lam, mu = _simplify_weight(as_coeff(lam)), _simplify_weight(as_coeff(mu))
    _check_nonresonant(lam, mu)
    if S.delta != mu - lam:
        raise ValueError(f"symbol has delta {S.delta}, weights give {mu - lam}")
    k2 = S.k2
    coeffs = [None] * (k2 + 1)
    residual = list(S.entries)
    for k in range(k2, -1, -1):
        a = residual[k]
        coeffs[k] = a
        if not a:
            continue
        d = a
        for n in range(1, k + 1):
            d = d.eta()
            if d:
                residual[k - n] = residual[k - n] - d.scale(gamma(n, k, lam, mu))
    return DiffOperator(coeffs, lam, mu, k2)


def density_action(X, S):
    """Direct-sum action: entry i goes to L^{delta - i/2}_X(P_i)."""
    X = as_field(X)
    return SymbolVector(
        [lie_density_fn(X, P, S.weight(i)) if P else P for i, P in enumerate(S.entries)],
        S.delta)


def induced_action(X, S, lam=LAM, mu=MU):
    """sigma o L^{lambda,mu}_X o sigma^{-1}, computed by honest conjugation."""
    A = quantize(S, lam, mu)
    return symbolize(module_action(X, A))


# -- beta coefficients ----------------------------------------------------

def beta_closed(p, j, lam=LAM, mu=MU):
    """Closed forms of the coupling coefficients beta_p^j for j <= 5."""
    lam, mu = as_coeff(lam), as_coeff(mu)
    d = mu - lam
    l = lam
    table = {
        (0, 3): lambda: -l * (2 * d + 2 * l - 1) / (2 * d - 2),
        (0, 4): lambda: -3 * l * (2 * d + 2 * l - 1) / ((2 * d - 1) * (2 * d - 4)),
        (1, 4): lambda: -(2 * d + 4 * l - 1) / (2 * (2 * d - 3)),
        (0, 5): lambda: (l * (2 * d + 2 * l - 1) * (2 * d + 4 * l - 1)
                         / ((2 * d - 1) * (2 * d - 3) * (2 * d - 5))),
        (1, 5): lambda: (-3 * (4 * l * d + 2 * d + 4 * l * l - 2 * l - 1)
                         / ((2 * d - 5) * (4 * d - 4))),
        (2, 5): lambda: -(d + 4 * l * d - 2 * l + 4 * l * l) / (2 * (d - 2)),
    }
    if (p, j) not in table:
        raise UnsupportedIndexPair(f"no closed form for beta_{p}^{j}")
    try:
        return table[(p, j)]()
    except ZeroDivisionError as exc:
        raise ResonantDenominator(f"beta_{p}^{j} has a pole here") from exc


# Probes for coupling extraction: non-osp generators F and a generic entry P.
_PROBE_F = ((3, ()), (4, ()), (3, (1,)), (4, (1,)))
_PROBE_P = ((6, ()), (6, (1,)), (5, ()), (5, (1,)))


def _probe_pairs(basis=POLY):
    for fm, fs in _PROBE_F:
        F = SuperFunction.monomial(fm, fs)
        for pm, ps in _PROBE_P:
            yield F, SuperFunction.monomial(pm, ps)


def coupling_term(p, j, lam, mu, F, P):
    """beta-free coupling pi^{j-p} o J_{(j-p)/2+1}^{delta-j/2}(F, P)."""
    delta = mu - lam
    J = Transvectant(Fraction(j - p, 2) + 1, delta - Fraction(j, 2))
    out = J(F, P)
    if (j - p) & 1:
        out = out.pi()
    return out


def _fit_scalar(pairs):
    """Least-commitment fit of observed = c * basis over many probes; None if inconsistent."""
    c = None
    for obs, base in pairs:
        if not base:
            if obs:
                return None, False
            continue
        key = next(iter(base.terms))
        guess = obs.terms.get(key, Fraction(0)) / base.terms[key]
        if obs != base.scale(guess):
            return None, False
        if c is None:
            c = guess
        elif c != guess:
            return None, False
    return c, True


@lru_cache(maxsize=None)
def _probe_responses(j, lam_key, mu_key):
    lam, mu = _weights_from_key(lam_key), _weights_from_key(mu_key)
    out = []
    for F, P in _probe_pairs():
        S = SymbolVector.single(j, P, mu - lam)
        out.append((F, P, induced_action(F, S, lam, mu)))
    return out


def _weight_key(w):
    w = as_coeff(w)
    return ("frac", w) if isinstance(w, Fraction) else ("rat", str(w))


def _weights_from_key(key):
    kind, v = key
    return v if kind == "frac" else parse_coeff(v)


def beta_extract(p, j, lam=LAM, mu=MU):
    """Read beta_p^j off the induced action on probe symbols with only entry j nonzero.

    Returns 0 when j - p < 3; raises ValueError if the response is not a
    multiple of the transvectant term (which would contradict the structure).
    """
    lam, mu = _simplify_weight(as_coeff(lam)), _simplify_weight(as_coeff(mu))
    _check_nonresonant(lam, mu)
    if not 0 <= p < j:
        raise UnsupportedIndexPair(f"beta_{p}^{j} needs 0 <= p < j")
    responses = _probe_responses(j, _weight_key(lam), _weight_key(mu))
    if j - p < 3:
        for F, P, R in responses:
            if R[p]:
                raise ValueError(f"unexpected coupling from entry {j} to entry {p}")
        return Fraction(0)
    pairs = [(R[p], coupling_term(p, j, lam, mu, F, P)) for F, P, R in responses]
    c, ok = _fit_scalar(pairs)
    if not ok:
        raise ValueError(f"induced action is not proportional to the transvectant at ({p}, {j})")
    return Fraction(0) if c is None else c
