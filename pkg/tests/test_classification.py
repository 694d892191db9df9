from fractions import Fraction as Fr

import pytest

from supercircle.classification import (IsoWitness, adjoint_is_equivariant, adjoint_pair,
                                        is_exceptional, is_resonant, literal_exceptional, solve,
                                        solve_generic, solve_resonant, table1, zero_loci)
from supercircle.errors import (ResonanceMismatch, ResonantWeights, UnsupportedOrder,
                               WeightShiftMismatch)

LAM, RHO = Fr(2, 5), Fr(-3, 7)


def test_resonance_and_adjoint():
    assert is_resonant(Fr(3, 2)) and is_resonant(2)
    assert not is_resonant(Fr(1, 3)) and not is_resonant(0)
    assert adjoint_pair(Fr(1, 3), Fr(1)) == (Fr(-1, 2), Fr(1, 6))


@pytest.mark.parametrize("k2", range(5))
def test_generic_witness_verified(k2):
    lam, mu, rho = Fr(1, 3), Fr(5, 7), Fr(-2, 5)
    w = solve_generic(Fr(k2, 2), lam, mu, rho, rho + mu - lam)
    assert w is not None and w.verified
    assert len(w.instantiate()) == k2 + 1


def test_generic_rejects_resonant_shift():
    with pytest.raises(ResonantWeights):
        solve_generic(2, Fr(1, 3), Fr(4, 3), 0, 1)


def test_generic_needs_matching_shift():
    with pytest.raises(WeightShiftMismatch):
        solve_generic(1, Fr(1, 3), Fr(5, 7), 0, 1)


def test_resonant_delta_one_order_two():
    w = solve_resonant(2, LAM, LAM + 1, RHO, RHO + 1)
    assert w.verified
    tau = w.instantiate({4: Fr(1)})
    assert tau[0] == RHO * (2 * RHO + 1) / (LAM * (2 * LAM + 1))
    assert tau[1] == tau[2] == (4 * RHO + 1) / (4 * LAM + 1)
    assert tau[3] == tau[4] == 1


def test_resonant_mismatch():
    with pytest.raises(ResonanceMismatch):
        solve_resonant(1, LAM, LAM + Fr(3, 2), RHO, RHO + Fr(3, 2))


def test_shift_two_has_witness():
    w = solve(2, Fr(1, 3), Fr(7, 3), Fr(2, 5), Fr(12, 5))
    assert w is not None and w.verified


def test_witness_json():
    w = solve_resonant(2, LAM, LAM + 1, RHO, RHO + 1)
    j = w.to_json()
    assert j["source"] == ["2/5", "7/5"] and j["target"] == ["-3/7", "4/7"]
    assert j["method"] == "chi-epsilon" and j["verified"] is True
    assert j["tau_normalized"][4] == "1"
    assert isinstance(w, IsoWitness) and w.free == [4]


def test_literal_table():
    assert literal_exceptional(2, 0, Fr(1, 2)) == ["(0, μ)", "(λ, 1/2 - λ)"]
    assert literal_exceptional(Fr(3, 2), Fr(-1, 2), 1) == ["(-1/2, 1)"]
    # adjoint of (-1/2, 1) is (-1/2, 1) itself; (1/4, 1/4) sits on lambda + mu = 1/2
    assert literal_exceptional(2, Fr(1, 4), Fr(1, 4)) == ["(λ, 1/2 - λ)"]
    assert literal_exceptional(1, Fr(1, 3), Fr(2, 3)) == []
    with pytest.raises(UnsupportedOrder):
        literal_exceptional(3, 0, 1)


def test_exceptional_scan_points():
    assert is_exceptional(Fr(3, 2), Fr(-1, 2), 1)
    assert not is_exceptional(Fr(3, 2), Fr(1, 5), Fr(3, 5))


def test_table_above_two_is_singular():
    c = table1(3)
    assert c.status == "singular"
    assert c.to_json()["families"] == ["all (λ, μ)"]


def test_zero_loci_order_three_halves():
    loci = zero_loci(Fr(3, 2))["generic"]
    assert loci == {"beta_0^3": ["2*λ - 2*μ + 1 = 0", "2*μ - 1 = 0", "λ = 0"]}


@pytest.mark.parametrize("k2", [0, 2, 3])
def test_conjugation_equivariant(k2):
    assert adjoint_is_equivariant(Fr(k2, 2), Fr(1, 3), Fr(13, 21), degree=2)
