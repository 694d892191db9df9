from fractions import Fraction as Fr

import pytest

from supercircle.coeffs import LAM
from supercircle.contact import (ContactField, Density, contact_bracket, lie_density,
                                 lie_density_fn, osp_basis, spanning_fields)
from supercircle.errors import NonHomogeneousInput
from supercircle.superfunction import SuperFunction as SF


def test_hand_brackets():
    assert contact_bracket(SF.const(1), SF.x()) == SF.const(1)
    assert contact_bracket(SF.x(), SF.x(2)) == SF.x(2)
    # {theta, theta} = -1/2 (-1) etabar(theta)^2 = 1/2
    assert contact_bracket(SF.theta(), SF.theta()) == SF.const(Fr(1, 2))


def test_density_action_by_hand():
    X = ContactField(SF.x())
    assert lie_density_fn(X, SF.x(3), LAM) == SF.monomial(3, (), LAM + 3)
    assert lie_density_fn(ContactField(SF.const(1)), SF.x(4), LAM) == SF.monomial(3, (), 4)
    d = lie_density(X, Density(SF.x(2), Fr(1, 2)))
    assert d.weight == Fr(1, 2) and d.F == SF.monomial(2, (), Fr(5, 2))


def test_osp_closed_under_bracket():
    span = {(0, ()), (1, ()), (2, ()), (0, (1,)), (1, (1,))}
    for X in osp_basis():
        for Y in osp_basis():
            assert set(contact_bracket(X.F, Y.F).terms) <= span


@pytest.mark.parametrize("n", [2, 3])
def test_bracket_closure_n(n):
    fields = spanning_fields(n, 2)
    for X in fields:
        VX = X.vector_field()
        for Y in fields:
            B = VX.bracket(Y.vector_field())
            F3 = B.recover_generator()
            assert F3 == contact_bracket(X.F, Y.F)
            assert ContactField(F3).vector_field() == B


def test_field_action_is_module():
    fields = spanning_fields(1, 3)
    G = SF.x(4) + SF.monomial(2, (1,), 3)
    for X in fields:
        for Y in fields:
            s = -1 if X.parity * Y.parity else 1
            XY = ContactField(contact_bracket(X.F, Y.F))
            for part in G.homogeneous_parts():
                lhs = lie_density_fn(XY, part, LAM)
                rhs = (lie_density_fn(X, lie_density_fn(Y, part, LAM), LAM)
                       - lie_density_fn(Y, lie_density_fn(X, part, LAM), LAM).scale(s))
                assert lhs == rhs


def test_non_homogeneous_rejected():
    with pytest.raises(NonHomogeneousInput):
        ContactField(SF.x(1) + SF.theta())
