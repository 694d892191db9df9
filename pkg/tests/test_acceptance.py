"""Acceptance criteria 1-12, one recorded PASS/FAIL line each."""
import io
import time
from fractions import Fraction as Fr

import pytest

from supercircle.coeffs import LAM, MU
from supercircle.contact import ContactField, Density, contact_bracket, osp_basis, spanning_fields
from supercircle.diffop import action_closed, module_action, spanning_operators
from supercircle.superfunction import FOURIER, POLY, SuperFunction
from supercircle.symbols import SymbolVector

H = Fr(1, 2)


def _sign(p):
    return -1 if p & 1 else 1


# -- 1 ------------------------------------------------------------------------------

def test_criterion_1_contact_algebra(record):
    t0 = time.perf_counter()
    fns = SuperFunction.spanning(1, POLY, 6)
    fields = {id(F): ContactField(F).vector_field() for F in fns}
    bad = []
    for a, F in enumerate(fns):
        for G in fns[a:]:
            lhs = fields[id(F)].bracket(fields[id(G)])
            if lhs != ContactField(contact_bracket(F, G)).vector_field():
                bad.append(("bracket", F, G))
    for F in fns:
        for G in fns:
            for K in fns:
                pf, pg, pk = F.parity(), G.parity(), K.parity()
                total = (contact_bracket(F, contact_bracket(G, K)).scale(_sign(pf * pk))
                         + contact_bracket(G, contact_bracket(K, F)).scale(_sign(pg * pf))
                         + contact_bracket(K, contact_bracket(F, G)).scale(_sign(pk * pg)))
                if total:
                    bad.append(("jacobi", F, G, K))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 10
    record(1, ok, f"{len(fns)} monomials, {len(bad)} failures, {elapsed:.1f} s")
    assert not bad
    assert elapsed < 10


# -- 2 ------------------------------------------------------------------------------

def test_criterion_2_closed_form_action(record):
    fields = spanning_fields(1, 4)
    bad = 0
    count = 0
    for order2 in range(7):
        for A in spanning_operators(order2, 3, LAM, MU):
            for X in fields:
                count += 1
                if action_closed(X, A) != module_action(X, A):
                    bad += 1
    record(2, bad == 0, f"{count} operator/field pairs, order2 <= 6")
    assert bad == 0


# -- 3 ------------------------------------------------------------------------------

def test_criterion_3_symbolize_equivariance(record):
    from supercircle.symbols import density_action, quantize, symbolize
    bad = 0
    count = 0
    for order2 in range(7):
        for A in spanning_operators(order2, 3, LAM, MU):
            S = symbolize(A)
            count += 1
            if quantize(S, LAM, MU) != A:
                bad += 1
            for X in osp_basis():
                if symbolize(module_action(X, A)) != density_action(X, S):
                    bad += 1
    record(3, bad == 0, f"{count} operators up to k = 3, formal weights")
    assert bad == 0


# -- 4 ------------------------------------------------------------------------------

def test_criterion_4_beta_formulas(record):
    from supercircle.symbols import beta_extract
    lam, d = LAM, MU - LAM
    printed = {
        (0, 3): -lam * (2 * d + 2 * lam - 1) / (2 * d - 2),
        (0, 4): -3 * lam * (2 * d + 2 * lam - 1) / ((2 * d - 1) * (2 * d - 4)),
        (1, 4): -(2 * d + 4 * lam - 1) / (2 * (2 * d - 3)),
        (0, 5): lam * (2 * d + 2 * lam - 1) * (2 * d + 4 * lam - 1) / ((2 * d - 1) * (2 * d - 3) * (2 * d - 5)),
        (1, 5): -3 * (4 * lam * d + 2 * d + 4 * lam * lam - 2 * lam - 1) / ((2 * d - 5) * (4 * d - 4)),
        (2, 5): -(d + 4 * lam * d - 2 * lam + 4 * lam * lam) / (2 * (d - 2)),
    }
    bad = [pj for pj, v in printed.items() if beta_extract(*pj) != v]
    record(4, not bad, "six closed forms" + (f"; mismatched {bad}" if bad else ""))
    assert not bad


# -- 5 ------------------------------------------------------------------------------

def test_criterion_5_generic_classification(record):
    from supercircle.classification import beta_at, solve_generic, verify_table1
    t0 = time.perf_counter()
    lam, mu, rho = Fr(1, 3), Fr(5, 7), Fr(-2, 5)
    nu = rho + mu - lam
    checks = []
    for k in (H, 1):
        w = solve_generic(k, lam, mu, rho, nu)
        checks.append(w is not None and len(w.free) == int(2 * k) + 1 and w.verified)
    w = solve_generic(2, lam, mu, rho, nu)
    tau = w.instantiate({f: v for f, v in zip(w.free, (Fr(5), Fr(7)))})
    b = lambda p, j, x, y: beta_at(p, j, x, y)
    checks.append(tau[4] == tau[3])
    checks.append(tau[0] == tau[3] * b(0, 4, rho, nu) / b(0, 4, lam, mu))
    checks.append(tau[1] == tau[3] * b(1, 4, rho, nu) / b(1, 4, lam, mu))
    checks.append(tau[0] * b(0, 3, lam, mu) == tau[3] * b(0, 3, rho, nu))
    checks.append(len(w.free) == 2 and w.verified)
    k = Fr(5, 2)
    checks.append(solve_generic(k, lam, mu, rho, nu, verify=False) is None)
    checks.append(solve_generic(k, lam, mu, lam, mu) is not None)
    adj = H - mu
    checks.append(solve_generic(k, lam, mu, adj, adj + mu - lam) is not None)
    scans = {str(k): verify_table1(k) for k in (H, 1, Fr(3, 2), 2)}
    elapsed = time.perf_counter() - t0
    ok = all(checks) and all(scans.values()) and elapsed < 300
    record(5, ok, f"witness checks {sum(checks)}/{len(checks)}, scan {scans}, {elapsed:.0f} s")
    assert all(checks)
    assert all(scans.values())
    assert elapsed < 300


# -- 6 ------------------------------------------------------------------------------

def _osp_pairs():
    osp = osp_basis()
    return [(X, Y) for a, X in enumerate(osp) for Y in osp[a:]]


def test_criterion_6_deformed_homomorphism(record):
    from supercircle.normal import DeformedModule, deformed_action
    bad = 0
    count = 0
    for d2 in range(1, 5):
        delta = Fr(d2, 2)
        for k2 in range(d2, 5):
            M = DeformedModule(LAM, LAM + delta, k2)
            probes = [SymbolVector.single(j, P, delta, k2)
                      for j in range(k2 + 1) for P in SuperFunction.spanning(1, POLY, 4)]
            for X, Y in _osp_pairs():
                XY = ContactField(contact_bracket(X.F, Y.F))
                s = _sign(X.parity * Y.parity)
                for S in probes:
                    count += 1
                    left = deformed_action(M, XY, S)
                    right = (deformed_action(M, X, deformed_action(M, Y, S))
                             - deformed_action(M, Y, deformed_action(M, X, S)).scale(s))
                    if left != right:
                        bad += 1
    record(6, bad == 0, f"{count} bracket checks")
    assert bad == 0


# -- 7 ------------------------------------------------------------------------------

def test_criterion_7_normal_symbols(record):
    from supercircle.normal import (build_xi, check_diagonal, check_out_of_band,
                                    deformed_action, normal_quantize, normal_symbolize)
    bad = []
    for d2 in range(1, 5):
        delta = Fr(d2, 2)
        for k2 in range(d2, 5):
            table = build_xi(LAM, LAM + delta, Fr(k2, 2))
            M = table.module()
            for A in spanning_operators(k2, 3, LAM, LAM + delta):
                N = normal_symbolize(A, table)
                if normal_quantize(N, table) != A:
                    bad.append(("round trip", delta, k2))
                for X in osp_basis():
                    if normal_symbolize(module_action(X, A), table) != deformed_action(M, X, N):
                        bad.append(("equivariance", delta, k2))
            for key, (xi, g) in check_out_of_band(delta, k2).items():
                if g is None or xi != g:
                    bad.append(("out of band", delta, k2, key))
            if not all(check_diagonal(delta, k2).values()):
                bad.append(("diagonal", delta, k2))
    record(7, not bad, "delta in {1/2, 1, 3/2, 2}, k <= 2" + (f"; {bad[:3]}" if bad else ""))
    assert not bad


# -- 8 ------------------------------------------------------------------------------

def test_criterion_8_corollary(record):
    from supercircle.normal import corollary_sides
    bad = []
    count = 0
    for d2 in range(1, 5):
        delta = Fr(d2, 2)
        for k2 in range(d2, 5):
            for j in range(3, k2 + 1):
                for p in range(j - 2):
                    count += 1
                    left, right = corollary_sides(p, j, LAM, LAM + delta, Fr(k2, 2))
                    if left != right:
                        bad.append((delta, k2, p, j))
    record(8, not bad, f"{count} relations")
    assert not bad


# -- 9 ------------------------------------------------------------------------------

# literal entries: (k, delta, tau as a function of (lam, rho, free value t))
LITERAL_RESONANT = {
    "k=1/2 delta=1/2": (H, H, lambda l, r, t: [r / l, 1]),
    "k=1 delta=1/2": (1, H, lambda l, r, t: [r / l, 1, t]),
    "k=1 delta=1": (1, 1, lambda l, r, t: [t, 1, 1]),
    "k=3/2 delta=1/2": (Fr(3, 2), H, lambda l, r, t: [r * r / (l * l), r / l, t, 1]),
    "k=3/2 delta=1": (Fr(3, 2), 1, lambda l, r, t: [r * (2 * r + 1) / (l * (2 * l + 1)), t, t, 1]),
    "k=3/2 delta=3/2": (Fr(3, 2), Fr(3, 2),
                        lambda l, r, t: [r * (r + 1) / (l * (l + 1)), t, (2 * r + 1) / (2 * l + 1), 1]),
    "k=2 delta=1/2": (2, H, lambda l, r, t: [r * r / (l * l), r / l, t, 1, 1]),
    "k=2 delta=1": (2, 1, lambda l, r, t: [(2 * r + 1) / (2 * l + 1), (4 * r + 1) / (4 * l + 1),
                                           (4 * r + 1) / (4 * l + 1), l / r, 1]),
    "k=2 delta=3/2": (2, Fr(3, 2), lambda l, r, t: [r * (r + 1) / (l * (l + 1)), 1,
                                                    (2 * r + 1) / (2 * l + 1), 1, 1]),
}
DIFFERS = {"k=2 delta=1", "k=2 delta=3/2", "delta=2 obstruction"}
_SAMPLES = [(Fr(2, 5), Fr(-3, 7)), (Fr(5, 3), Fr(1, 4)), (Fr(-7, 2), Fr(9, 5))]
_LITERAL_OUTCOMES = {}


def _literal_case(name):
    from supercircle.classification import solve_resonant
    if name == "delta=2 obstruction":
        # "a solution exists iff lambda = rho or rho + lambda = 1/2"
        ok = True
        for lam, rho in _SAMPLES + [(Fr(1, 3), Fr(1, 3)), (Fr(1, 3), Fr(1, 6))]:
            expected = lam == rho or rho + lam == H
            w = solve_resonant(2, lam, lam + 2, rho, rho + 2)
            ok = ok and ((w is not None) == expected)
        return ok
    k, delta, fn = LITERAL_RESONANT[name]
    ok = True
    for lam, rho in _SAMPLES:
        w = solve_resonant(k, lam, lam + delta, rho, rho + delta)
        ok = ok and w is not None and w.admits(fn(lam, rho, Fr(3)))
    return ok


def _finish_9(record):
    names = list(LITERAL_RESONANT) + ["delta=2 obstruction"]
    if all(n in _LITERAL_OUTCOMES for n in names + ["computed"]):
        failed = [n for n in names if not _LITERAL_OUTCOMES[n]]
        ok = not failed and _LITERAL_OUTCOMES["computed"]
        detail = "all literal entries reproduced" if ok else f"literal entries not reproduced: {failed}"
        record(9, ok, detail)


@pytest.mark.parametrize("name", [n for n in LITERAL_RESONANT if n not in DIFFERS])
def test_criterion_9_literal_entries(name, record):
    ok = _literal_case(name)
    _LITERAL_OUTCOMES[name] = ok
    _finish_9(record)
    assert ok


@pytest.mark.parametrize("name", sorted(DIFFERS))
@pytest.mark.xfail(strict=True, reason="literal entry differs from the computed isomorphism")
def test_criterion_9_literal_entries_differing(name, record):
    ok = _literal_case(name)
    _LITERAL_OUTCOMES[name] = ok
    _finish_9(record)
    assert ok


def test_criterion_9_computed_tables(record):
    """The chi/epsilon/Xi system agrees with the direct intertwiner solve everywhere."""
    from supercircle.classification import solve_resonant
    ok = True
    for d2 in range(1, 5):
        for k2 in range(d2, 5):
            for lam, rho in _SAMPLES:
                delta = Fr(d2, 2)
                w = solve_resonant(Fr(k2, 2), lam, lam + delta, rho, rho + delta)
                ok = ok and w is not None and w.verified
    _LITERAL_OUTCOMES["computed"] = ok
    _finish_9(record)
    assert ok


# -- 10 -----------------------------------------------------------------------------

def test_criterion_10_cocycles(record):
    from supercircle.cocycles import Upsilon, cocycle_check, explicit_cocycles
    results = {}
    for n in (1, 2, 3):
        results[f"Upsilon_{n}/osp"] = cocycle_check(Upsilon(n), "osp")[0]
    for c in explicit_cocycles():
        results[f"{c.label}/K1"] = cocycle_check(c, "K1", degree=6)[0]
    bad = [k for k, v in results.items() if not v]
    record(10, not bad, f"{len(results)} cocycles" + (f"; failing {bad}" if bad else ""))
    assert not bad


# -- 11 -----------------------------------------------------------------------------

def test_criterion_11_duality(record):
    from supercircle.classification import adjoint_is_equivariant
    from supercircle.kn import (ContactFieldN, berezin, berezin_weight, lie_density_n,
                                pairing_counterexample, spanning_fields_n,
                                spanning_operators_n, star, star_equivariance_counterexample)
    t0 = time.perf_counter()
    parts = {}
    parts["conjugate"] = all(
        adjoint_is_equivariant(Fr(k2, 2), Fr(1, 3), Fr(1, 3) + Fr(2, 7), degree=3)
        for k2 in range(6))
    inv = True
    for n in (1, 2, 3):
        w = berezin_weight(n)
        fns = SuperFunction.spanning(n, FOURIER, 3)
        for Hf in fns:
            X = ContactFieldN(Hf)
            for P in fns:
                inv = inv and berezin(lie_density_n(X, Density(P, w))) == 0
    parts["berezin"] = inv
    pair = True
    equiv = True
    for n in (1, 2):
        fields = spanning_fields_n(n, 2, FOURIER)
        for A in spanning_operators_n(n, 3, 1, basis=FOURIER):
            A = A.with_weights(Fr(1, 3), Fr(1, 3) + Fr(A.order2, 2))
            pair = pair and pairing_counterexample(A, 2) is None and star(star(A)) == A
            equiv = equiv and star_equivariance_counterexample(A, fields) is None
    parts["star pairing"] = pair
    parts["star equivariance"] = equiv
    elapsed = time.perf_counter() - t0
    ok = all(parts.values()) and elapsed < 300
    record(11, ok, f"{parts}, {elapsed:.0f} s")
    assert all(parts.values())
    assert elapsed < 300


# -- 12 -----------------------------------------------------------------------------

def test_criterion_12_determinism(record):
    from supercircle.cli import run
    outs = []
    codes = []
    for _ in range(2):
        buf = io.StringIO()
        codes.append(run(["verify-all", "--degree", "3"], stdout=buf))
        outs.append(buf.getvalue())
    ok = outs[0] == outs[1] and codes == [0, 0]
    record(12, ok, f"exit codes {codes}, {len(outs[0])} bytes")
    assert ok


def test_literal_table_helpers_consistent():
    """The literal entries above are well-formed at the sample weights."""
    for name, (k, delta, fn) in LITERAL_RESONANT.items():
        for lam, rho in _SAMPLES:
            assert len(fn(lam, rho, Fr(3))) == int(2 * k) + 1
