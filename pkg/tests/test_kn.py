from fractions import Fraction as Fr

import pytest

from supercircle.contact import Density, spanning_fields
from supercircle.diffop import DiffOperator, conjugate, module_action, spanning_operators
from supercircle.errors import PolyBasisNotIntegrable, WeightSumMismatch, WrongWeight
from supercircle.kn import (ContactFieldN, DiffOperatorN, berezin, berezin_weight, compose_n,
                            derive_generator_adjoints, extend, generator_adjoint, join_last,
                            lie_density_n, module_action_n, pairing, pairing_counterexample,
                            spanning_fields_n, spanning_operators_n, split_last, star,
                            star_equivariance_counterexample)
from supercircle.superfunction import FOURIER, POLY, SuperFunction as SF

THIRD = Fr(1, 3)


def test_generator_relations():
    for n in (2, 3):
        dx = DiffOperatorN.generator(0, n)
        for i in range(1, n + 1):
            e = DiffOperatorN.generator(i, n)
            assert compose_n(e.with_weights(Fr(1, 2), 1), e) == dx.scale(-1)
            for j in range(i + 1, n + 1):
                f = DiffOperatorN.generator(j, n)
                ef = compose_n(e.with_weights(Fr(1, 2), 1), f)
                fe = compose_n(f.with_weights(Fr(1, 2), 1), e)
                assert (ef + fe).is_zero()


def test_normal_form_moves_even_powers():
    one = SF.const(1, 2)
    A = DiffOperatorN({(0, 2): one}, 0, 1, 2, POLY)
    assert list(A.coeffs) == [(2, 0)]


def test_etabar_apply():
    F = SF.monomial(2, (1, 2), n=2)
    # etabar_2(x^2 theta1 theta2) = -x^2 theta1
    assert DiffOperatorN.generator(2, 2).apply_fn(F) == SF.monomial(2, (1,), c=-1, n=2)


@pytest.mark.parametrize("n", [1, 2])
def test_generator_adjoints_solved(n):
    solved = derive_generator_adjoints(n)
    for gen in range(n + 1):
        assert solved[gen] == generator_adjoint(gen, n, FOURIER)


def test_star_is_conjugate_for_one_odd_variable():
    for order2 in range(4):
        for A in spanning_operators(order2, 2, THIRD, THIRD + Fr(order2, 2)):
            B = DiffOperatorN.from_diffop(A)
            assert star(B) == DiffOperatorN.from_diffop(conjugate(A))


def test_action_matches_one_variable_code():
    fields = spanning_fields(1, 3)
    for A in spanning_operators(2, 2, THIRD, Fr(4, 3)):
        for X in fields:
            assert module_action_n(X, DiffOperatorN.from_diffop(A)) == \
                DiffOperatorN.from_diffop(module_action(X, A))


def test_berezin_examples():
    assert berezin(Density(SF.fourier(0, (1,), c=3), Fr(1, 2))) == 3
    assert berezin(Density(SF.fourier(0, (), c=5), Fr(1, 2))) == 0
    assert berezin(Density(SF.fourier(2, (1,), c=5), Fr(1, 2))) == 0
    assert berezin(Density(SF.fourier(0, (1, 2), c=-2, n=2), 0)) == -2
    assert berezin_weight(3) == Fr(-1, 2)
    with pytest.raises(WrongWeight):
        berezin(Density(SF.fourier(0, (1,)), 0))
    with pytest.raises(PolyBasisNotIntegrable):
        berezin(Density(SF.theta(1), Fr(1, 2)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_berezin_invariant(n):
    w = berezin_weight(n)
    for H in SF.spanning(n, FOURIER, 1):
        for P in SF.spanning(n, FOURIER, 1):
            assert berezin(lie_density_n(ContactFieldN(H), Density(P, w))) == 0


def test_pairing():
    phi = Density(SF.fourier(0, (1,)), Fr(1, 4))
    psi = Density(SF.fourier(0, ()), Fr(1, 4))
    assert pairing(phi, psi) == 1
    with pytest.raises(WeightSumMismatch):
        pairing(phi, Density(psi.F, 0))


@pytest.mark.parametrize("n", [1, 2])
def test_star_involution_pairing_equivariance(n):
    fields = spanning_fields_n(n, 1, FOURIER)
    for A in spanning_operators_n(n, 2, 1, basis=FOURIER):
        A = A.with_weights(THIRD, THIRD + Fr(A.order2, 2))
        assert star(star(A)) == A
        assert pairing_counterexample(A, 1) is None
        assert star_equivariance_counterexample(A, fields) is None


def test_star_weights():
    A = DiffOperatorN.generator(1, 2, THIRD, FOURIER)
    S = star(A)
    assert (S.src, S.dst) == (-THIRD - Fr(1, 2), -THIRD)


def test_lie_derivative_of_one():
    F = SF.monomial(2, (1, 2), n=2)
    out = lie_density_n(ContactFieldN(F), Density(SF.const(1, 2), THIRD))
    assert out.F == F.d_dx().scale(THIRD)


@pytest.mark.parametrize("n", [2, 3])
def test_split_last_recursion(n):
    w_n, w_prev = berezin_weight(n), berezin_weight(n - 1)
    for H0 in SF.spanning(n - 1, POLY, 2):
        X, X0 = ContactFieldN(extend(H0, n)), ContactFieldN(H0)
        for F in SF.spanning(n, POLY, 2):
            F1, F2 = split_last(F)
            assert join_last(F1, F2) == F
            left = lie_density_n(X, Density(F, w_n)).F
            right = join_last(lie_density_n(X0, Density(F1, w_n)).F,
                              lie_density_n(X0, Density(F2, w_prev)).F)
            assert left == right


def test_json_round_trip():
    A = DiffOperatorN({(1, 1): SF.monomial(1, (2,), c=Fr(2, 3), n=2)}, THIRD, Fr(4, 3), 2, POLY)
    assert DiffOperatorN.from_json(A.to_json()) == A
    B = DiffOperatorN.from_diffop(DiffOperator.monomial(3, SF.x(2), 0, Fr(3, 2), 3))
    assert B.to_diffop() == DiffOperator.monomial(3, SF.x(2), 0, Fr(3, 2), 3)
