import io
import json
from fractions import Fraction as Fr

from supercircle.cli import run
from supercircle.contact import Density
from supercircle.diffop import DiffOperator
from supercircle.kn import DiffOperatorN
from supercircle.superfunction import FOURIER, SuperFunction as SF


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    report = json.loads(out.getvalue()) if out.getvalue() else None
    return code, report, err.getvalue()


def payload(tmp_path, data, name="in.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data), encoding="utf-8")
    return str(p)


def test_classify_singular_source():
    code, rep, _ = call("classify", "--k", "3/2", "--lambda", "-1/2", "--mu", "1",
                        "--rho", "1/5", "--nu", "17/10")
    assert code == 1
    assert rep["verdict"] == "singular-source" and rep["isomorphic"] is False
    assert rep["families"] == ["(-1/2, 1)"]


def test_classify_isomorphic():
    code, rep, _ = call("classify", "--k", "1", "--lambda", "1/3", "--mu", "5/7",
                        "--rho", "-2/5", "--nu", "-2/105")
    assert code == 0 and rep["verdict"] == "isomorphic"
    assert rep["witness"]["verified"] is True


def test_beta_closed_form():
    code, rep, _ = call("beta", "--p", "0", "--j", "3")
    assert code == 0
    assert rep["beta_delta"] == "-λ*(2*δ + 2*λ - 1)/(2*(δ - 1))"
    assert rep["closed_form_agrees"] is True


def test_float_rejected():
    code, rep, err = call("beta", "--p", "0", "--j", "3", "--lambda", "0.5")
    assert code == 2 and rep is None and "rational" in err


def test_missing_flag():
    code, _, err = call("table1")
    assert code == 2 and "--k" in err


def test_resonant_symbolize_is_input_error(tmp_path):
    A = DiffOperator.monomial(2, SF.x(1), Fr(1, 3), Fr(4, 3), 2)
    code, _, err = call("symbolize", "--json", payload(tmp_path, {"operator": A.to_json()}))
    assert code == 2 and "resonant" in err


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json", encoding="utf-8")
    code, _, err = call("symbolize", "--json", str(p))
    assert code == 2 and "cannot read" in err


def test_symbolize_quantize(tmp_path):
    A = DiffOperator.monomial(2, SF.x(1), Fr(1, 3), Fr(13, 21), 2)
    code, rep, _ = call("symbolize", "--json", payload(tmp_path, {"operator": A.to_json()}))
    assert code == 0
    code, back, _ = call("quantize", "--lambda", "1/3", "--mu", "13/21",
                         "--json", payload(tmp_path, {"symbol": rep["symbol"]}, "s.json"))
    assert code == 0 and DiffOperator.from_json(back["operator"]) == A


def test_berezin(tmp_path):
    d = Density(SF.fourier(0, (1,), c=3), Fr(1, 2))
    code, rep, _ = call("berezin", "--json", payload(tmp_path, {"density": d.to_json()}))
    assert code == 0 and rep["value"] == "3"


def test_berezin_wrong_weight(tmp_path):
    d = Density(SF.fourier(0, (1,)), 0)
    code, _, err = call("berezin", "--json", payload(tmp_path, {"density": d.to_json()}))
    assert code == 2 and err


def test_star(tmp_path):
    A = DiffOperatorN({(1, 1): SF.fourier(1, (2,), n=2)}, Fr(1, 3), Fr(4, 3), 2, FOURIER)
    code, rep, _ = call("star", "--json", payload(tmp_path, {"operator": A.to_json()}))
    assert code == 0 and rep["pairing_identity"] is True
    assert rep["star"]["lambda"] == "-4/3" and rep["star"]["mu"] == "-1/3"


def test_cocycle_check():
    code, rep, _ = call("cocycle-check", "--cocycle", "J6", "--lambda", "1/3",
                        "--algebra", "K1", "--degree", "4")
    assert code == 1 and rep["is_cocycle"] is False and len(rep["counterexample"]) == 2
    code, rep, _ = call("cocycle-check", "--cocycle", "upsilon2")
    assert code == 0 and rep["inputs"]["algebra"] == "osp"


def test_unknown_cocycle():
    assert call("cocycle-check", "--cocycle", "nope")[0] == 2


def test_chi_table():
    code, rep, _ = call("chi-table", "--delta", "1", "--k", "2")
    assert code == 0
    assert set(rep) >= {"chi", "epsilon", "Xi", "leftover", "inputs"}


def test_table1_singular():
    code, rep, _ = call("table1", "--k", "3")
    assert code == 0 and rep["classes"]["status"] == "singular"


def test_degree_env(monkeypatch):
    monkeypatch.setenv("SUPERCIRCLE_DEGREE", "2")
    code, rep, _ = call("cocycle-check", "--cocycle", "diag", "--algebra", "K1")
    assert code == 0 and rep["inputs"]["degree"] == 2
    monkeypatch.setenv("SUPERCIRCLE_DEGREE", "two")
    assert call("cocycle-check")[0] == 2


def test_report_is_deterministic():
    a = call("beta", "--p", "1", "--j", "4")
    b = call("beta", "--p", "1", "--j", "4")
    assert a == b
