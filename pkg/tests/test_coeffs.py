from fractions import Fraction as Fr

import pytest

from supercircle.coeffs import (DELTA, I, LAM, MU, GaussianCoeff, RationalCoeff, as_coeff,
                                binom, eval_at, format_coeff, parse_coeff, subs)
from supercircle.errors import ParseError, PoleAtPoint


def test_cancellation():
    assert (LAM * LAM - 1) / (LAM - 1) == LAM + 1
    assert (LAM - MU) / (MU - LAM) == -1


def test_field_identities():
    a = (LAM + 2) / (MU - 3)
    b = (2 * LAM * MU - 1) / (LAM + MU)
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a * a.inverse() == 1


def test_delta():
    assert DELTA == MU - LAM


def test_eval_and_pole():
    c = (LAM + 1) / (MU - 2)
    assert eval_at(c, 1, 3) == 2
    with pytest.raises(PoleAtPoint):
        eval_at(c, 0, 2)


def test_subs_symbolic():
    # mu -> lam + 1/2 turns 1/(mu - lam) into 2
    assert subs(1 / (MU - LAM), LAM, LAM + Fr(1, 2)) == 2
    assert subs(LAM * MU, LAM, LAM + MU) == LAM * LAM + LAM * MU


def test_parse_and_format_round_trip():
    for text in ["1/2*λ + μ", "(λ + 1) / (μ - 2)", "-3/4", "λ^2 - 2*λ*μ"]:
        c = parse_coeff(text)
        assert parse_coeff(format_coeff(c)) == c
    assert parse_coeff("1/2*λ + μ") == Fr(1, 2) * LAM + MU
    with pytest.raises(ParseError):
        parse_coeff("λ +")


def test_gaussian():
    assert I * I == -1
    z = GaussianCoeff(1, 2)
    assert z * z.conjugate() == 5
    assert (z / z) == 1


def test_binom_symbolic():
    assert binom(5, 2) == 10
    assert binom(LAM, 2) == LAM * (LAM - 1) / 2
    assert binom(Fr(1, 2), 2) == Fr(-1, 8)


def test_as_coeff():
    assert as_coeff(3) == Fr(3)
    assert isinstance(as_coeff("λ"), RationalCoeff)
    with pytest.raises(TypeError):
        as_coeff(0.5)
