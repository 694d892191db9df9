from fractions import Fraction as Fr

import pytest

from supercircle.coeffs import LAM, MU
from supercircle.contact import Density, lie_density_fn, spanning_fields
from supercircle.diffop import (DiffOperator, action_closed, compose, conjugate, lie_operator,
                                module_action, spanning_operators, super_binom)
from supercircle.errors import WeightMismatch
from supercircle.superfunction import SuperFunction as SF

Z = SF.zero()


def test_etabar_squared_is_minus_derivative():
    E = DiffOperator([Z, SF.const(1)], 0, Fr(1, 2))
    E2 = compose(DiffOperator([Z, SF.const(1)], Fr(1, 2), 1), E)
    G = SF.x(4) + SF.monomial(3, (1,))
    assert E2.apply_fn(G) == -G.d_dx()


def test_compose_matches_application():
    A = DiffOperator([SF.x(1), SF.theta(), SF.x(2)], LAM, LAM + 1)
    B = DiffOperator([SF.monomial(1, (1,)), SF.x(1)], LAM - Fr(1, 2), LAM)
    G = SF.x(5) + SF.monomial(4, (1,))
    for part in G.homogeneous_parts():
        assert compose(A, B).apply_fn(part) == A.apply_fn(B.apply_fn(part))


def test_compose_associative():
    ops = spanning_operators(2, 1, 0, 0)
    for A in ops[:6]:
        for B in ops[:6]:
            for C in ops[:6]:
                assert compose(compose(A, B), C) == compose(A, compose(B, C))


def test_lie_operator_is_density_action():
    for X in spanning_fields(1, 3):
        L = lie_operator(X, LAM)
        for G in SF.spanning(1, degree=4):
            assert L.apply_fn(G) == lie_density_fn(X, G, LAM)


def test_closed_form_matches_definition():
    for X in spanning_fields(1, 3):
        for A in spanning_operators(3, 2, LAM, MU):
            assert action_closed(X, A) == module_action(X, A)


def test_super_binom():
    assert super_binom(4, 2) == 2
    assert super_binom(4, 1) == 0
    assert super_binom(5, 1) == 1
    assert super_binom(5, 3) == 2


def test_conjugate_involution_and_weights():
    for A in spanning_operators(4, 2, Fr(1, 3), Fr(5, 6)):
        C = conjugate(A)
        assert (C.src, C.dst) == (Fr(1, 2) - Fr(5, 6), Fr(1, 2) - Fr(1, 3))
        assert conjugate(C) == A


def test_weight_checks():
    A = DiffOperator([SF.const(1)], 0, 1)
    with pytest.raises(WeightMismatch):
        A.apply(Density(SF.x(), 1))
    with pytest.raises(WeightMismatch):
        A + DiffOperator([SF.const(1)], 0, 2)


def test_json_round_trip():
    A = DiffOperator([SF.x(1), SF.theta(), SF.monomial(2, (), LAM)], LAM, MU)
    assert DiffOperator.from_json(A.to_json()) == A
