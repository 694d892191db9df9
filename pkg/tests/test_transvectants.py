from fractions import Fraction as Fr

import pytest

from supercircle.coeffs import LAM
from supercircle.contact import lie_density_fn, osp_basis
from supercircle.errors import UnsupportedOrder
from supercircle.superfunction import SuperFunction as SF
from supercircle.transvectants import (Transvectant, bilinear_components, transvectant_apply,
                                       transvectant_ratio, transvectant_terms)


def _sign(p):
    return -1 if p & 1 else 1


@pytest.mark.parametrize("k", [Fr(3, 2), 2, Fr(5, 2), 3])
def test_osp_invariance(k):
    """L^{lam+k-1}_X J(F, G) = (-1)^{|X||J|} J(L^{-1}_X F, G) + (-1)^{|X|(|J|+|F|)} J(F, L^lam_X G)."""
    J = Transvectant(k, LAM)
    fns = SF.spanning(1, degree=4)
    for X in osp_basis():
        for F in fns:
            for G in fns:
                left = lie_density_fn(X, J(F, G), LAM + k - 1)
                right = (J(lie_density_fn(X, F, -1), G).scale(_sign(X.parity * J.parity))
                         + J(F, lie_density_fn(X, G, LAM)).scale(_sign(X.parity * (F.parity() + J.parity))))
                assert left == right


def test_short_forms_proportional():
    F, G = SF.x(5), SF.monomial(4, (1,))
    for k in (Fr(5, 2), 3):
        general = transvectant_apply(k, LAM, F, G, normalized=False)
        short = transvectant_apply(k, LAM, F, G)
        assert general == short.scale(transvectant_ratio(k, LAM))


def test_bad_order():
    with pytest.raises(UnsupportedOrder):
        transvectant_terms(Fr(1, 3), LAM)


def test_bilinear_components_of_product():
    comps = bilinear_components(lambda F, G: F.d_dx() * G)
    # f' g theta^0 for even-even, one unit of derivative on the first argument
    assert comps[(0, 0)] == {(0, 1): 1}
