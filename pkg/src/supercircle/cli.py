"""Command-line front end: JSON reports on standard output.

Exit codes: 0 for success or a true verdict, 1 for a false verdict, 2 for
malformed input.  Numeric flags are exact rationals ("3", "-1/2"); floats are
refused.  The default spanning degree comes from SUPERCIRCLE_DEGREE.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from .coeffs import LAM, MU, as_coeff, format_coeff, subs
from .errors import SupercircleError

DEGREE_ENV = "SUPERCIRCLE_DEGREE"
_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class InputError(Exception):
    pass


def rational(text):
    if not _RATIONAL.match(text):
        raise argparse.ArgumentTypeError(f"expected an exact rational like 3 or -1/2, got {text!r}")
    value = Fraction(text.replace(" ", ""))
    return value


def half_integer(text):
    value = rational(text)
    if (2 * value).denominator != 1 or value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative half-integer, got {text!r}")
    return value


def _default_degree():
    raw = os.environ.get(DEGREE_ENV)
    if raw is None:
        return 4
    if not raw.strip().isdigit():
        raise InputError(f"{DEGREE_ENV} must be a nonnegative integer, got {raw!r}")
    return int(raw)


def _load_json(path):
    if path is None:
        raise InputError("this verb needs --json <file>")
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON payload {path!r}: {exc}") from exc


def _part(data, key):
    return data[key] if isinstance(data, dict) and key in data else data


def _weight(value, formal):
    return formal if value is None else value


def _fmt(c):
    return format_coeff(as_coeff(c))


def _delta_form(c):
    """c(lambda, mu) rewritten in lambda and delta = mu - lambda."""
    s = format_coeff(subs(as_coeff(c), LAM, LAM + MU))
    return s.replace("μ", "δ")


# -- verbs ----------------------------------------------------------------------

def cmd_symbolize(args):
    from .diffop import DiffOperator
    from .symbols import symbolize
    A = DiffOperator.from_json(_part(_load_json(args.json), "operator"))
    return True, {"symbol": symbolize(A).to_json()}


def cmd_quantize(args):
    from .symbols import SymbolVector, quantize
    S = SymbolVector.from_json(_part(_load_json(args.json), "symbol"))
    A = quantize(S, _weight(args.lam, LAM), _weight(args.mu, MU))
    return True, {"operator": A.to_json()}


def cmd_act(args):
    from .contact import ContactField
    from .diffop import DiffOperator, action_closed, module_action
    from .superfunction import SuperFunction
    data = _load_json(args.json)
    if not isinstance(data, dict) or "operator" not in data or "field" not in data:
        raise InputError("act needs a payload with 'operator' and 'field'")
    A = DiffOperator.from_json(data["operator"])
    X = ContactField(SuperFunction.from_json(data["field"]))
    B = module_action(X, A)
    agree = B == action_closed(X, A)
    return agree, {"result": B.to_json(), "closed_form_agrees": agree}


def cmd_beta(args):
    from .symbols import beta_closed, beta_extract
    from .errors import UnsupportedIndexPair
    lam, mu = _weight(args.lam, LAM), _weight(args.mu, MU)
    b = beta_extract(args.p, args.j, lam, mu)
    out = {"beta": _fmt(b)}
    if args.lam is None and args.mu is None:
        from .classification import factored
        out["beta_delta"] = factored(_delta_form(b), ("λ", "δ"))
    try:
        closed = beta_closed(args.p, args.j, lam, mu)
    except UnsupportedIndexPair:
        return True, out
    out["closed_form_agrees"] = closed == b
    return closed == b, out


def cmd_chi_table(args):
    from .normal import chi_table
    lam = _weight(args.lam, LAM)
    k = args.k if args.k is not None else args.delta
    t = chi_table(lam, lam + args.delta, k)
    out = {
        "chi": {f"{p},{j}": _fmt(v) for (p, j), v in sorted(t["chi"].items())},
        "epsilon": {str(p): _fmt(v) for p, v in sorted(t["epsilon"].items())},
        "Xi": {str(p): _fmt(v) for p, v in sorted(t["Xi"].items())},
        "leftover": {f"{p},{j}": _leftover_json(v) for (p, j), v in sorted(t["leftover"].items())},
    }
    return True, out


def _leftover_json(comps):
    return {f"{c}|{key}": _fmt(v)
            for c, inner in sorted(comps.items()) for key, v in sorted(inner.items())}


def cmd_normal_symbol(args):
    from .diffop import DiffOperator
    from .normal import build_xi, normal_symbolize
    lam = _weight(args.lam, LAM)
    k = args.k if args.k is not None else args.delta
    table = build_xi(lam, lam + args.delta, k)
    out = {"table": table.to_json()}
    if args.json:
        A = DiffOperator.from_json(_part(_load_json(args.json), "operator"))
        out["symbol"] = normal_symbolize(A, table).to_json()
    return True, out


def _cocycle(args):
    from . import cocycles as C
    name = args.cocycle
    if name in ("upsilon1", "upsilon2", "upsilon3"):
        return C.Upsilon(int(name[-1]))
    named = {
        "diag": lambda: C.upsilon_diag(args.lam if args.lam is not None else 0),
        "0-half": C.upsilon_0_half,
        "0-half-tilde": C.upsilon_0_half_tilde,
        "m-half-1": C.upsilon_m_half_1,
        "m1-3half": C.upsilon_m1_3half,
    }
    if name in named:
        return named[name]()
    m = re.fullmatch(r"J(\d+)", name)
    if m:
        return C.transvectant_cocycle(int(m.group(1)), args.lam if args.lam is not None else 0)
    raise InputError(f"unknown cocycle {name!r}")


def cmd_cocycle_check(args):
    from .cocycles import cocycle_check
    c = _cocycle(args)
    ok, pair = cocycle_check(c, args.algebra, degree=args.degree)
    out = {"cocycle": c.label, "algebra": args.algebra, "is_cocycle": ok}
    if pair is not None:
        out["counterexample"] = [str(pair[0].F), str(pair[1].F)]
    return ok, out


def cmd_classify(args):
    from .classification import is_exceptional, literal_exceptional, solve
    for name in ("lam", "mu", "rho", "nu"):
        if getattr(args, name) is None:
            raise InputError("classify needs --lambda, --mu, --rho and --nu")
    w = solve(args.k, args.lam, args.mu, args.rho, args.nu)
    out = {"isomorphic": w is not None}
    if w is not None:
        out["witness"] = w.to_json()
        out["verdict"] = "isomorphic"
    else:
        src = is_exceptional(args.k, args.lam, args.mu) or bool(literal_exceptional(args.k, args.lam, args.mu))
        tgt = is_exceptional(args.k, args.rho, args.nu) or bool(literal_exceptional(args.k, args.rho, args.nu))
        out["verdict"] = ("singular-source" if src else "singular-target" if tgt
                          else "not-isomorphic")
        out["families"] = literal_exceptional(args.k, args.lam, args.mu)
    return w is not None, out


def cmd_table1(args):
    from .classification import table1
    return True, {"classes": table1(args.k).to_json()}


def cmd_berezin(args):
    from .contact import Density
    from .kn import berezin
    d = Density.from_json(_part(_load_json(args.json), "density"))
    return True, {"value": _fmt(berezin(d))}


def cmd_star(args):
    from .kn import DiffOperatorN, pairing_counterexample, star
    from .superfunction import FOURIER
    A = DiffOperatorN.from_json(_part(_load_json(args.json), "operator"))
    out = {"star": star(A).to_json()}
    if A.basis == FOURIER:
        bad = pairing_counterexample(A, min(args.degree, 2))
        out["pairing_identity"] = bad is None
        if bad is not None:
            out["counterexample"] = [str(bad[0]), str(bad[1])]
            return False, out
    return True, out


def cmd_verify_all(args):
    from .verify import run_suites
    results = run_suites(args.degree)
    suites = {name: r.to_json() for name, r in results.items()}
    ok = all(r.ok for r in results.values())
    return ok, {"suites": suites,
                "passed": sum(r.passed for r in results.values()),
                "total": sum(r.total for r in results.values())}


VERBS = {
    "symbolize": cmd_symbolize,
    "quantize": cmd_quantize,
    "act": cmd_act,
    "beta": cmd_beta,
    "chi-table": cmd_chi_table,
    "normal-symbol": cmd_normal_symbol,
    "cocycle-check": cmd_cocycle_check,
    "classify": cmd_classify,
    "table1": cmd_table1,
    "berezin": cmd_berezin,
    "star": cmd_star,
    "verify-all": cmd_verify_all,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser():
    p = _Parser(prog="supercircle", description="Exact computations on S^{1|n}.")
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("--json", help="payload file ('-' for standard input)")
    p.add_argument("--k", type=half_integer)
    p.add_argument("--delta", type=half_integer)
    p.add_argument("--lambda", dest="lam", type=rational)
    p.add_argument("--mu", type=rational)
    p.add_argument("--rho", type=rational)
    p.add_argument("--nu", type=rational)
    p.add_argument("--p", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--cocycle", default="upsilon1",
                   help="upsilon1..3, diag, 0-half, 0-half-tilde, m-half-1, m1-3half, J<k2>")
    p.add_argument("--algebra", choices=["osp", "K1"], default="osp")
    p.add_argument("--degree", type=int)
    return p


_REQUIRED = {
    "beta": ("p", "j"),
    "chi-table": ("delta",),
    "normal-symbol": ("delta",),
    "classify": ("k",),
    "table1": ("k",),
}


def _inputs(args):
    out = {}
    for key, value in sorted(vars(args).items()):
        if value is None or key == "verb":
            continue
        if key in ("cocycle", "algebra") and args.verb != "cocycle-check":
            continue
        out[key] = format_coeff(value) if isinstance(value, Fraction) else value
    return out


_VALUE_FLAGS = ("--k", "--delta", "--lambda", "--mu", "--rho", "--nu", "--p", "--j", "--degree")
_NEGATIVE = re.compile(r"^-\d")


def _glue_negatives(argv):
    """'--lambda -1/2' -> '--lambda=-1/2' so argparse does not read the value as a flag."""
    out = []
    for token in argv:
        if out and out[-1] in _VALUE_FLAGS and _NEGATIVE.match(token):
            out[-1] = f"{out[-1]}={token}"
        else:
            out.append(token)
    return out


def run(argv=None, stdout=None, stderr=None):
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_negatives(argv))
        if args.degree is None:
            args.degree = _default_degree()
        for name in _REQUIRED.get(args.verb, ()):
            if getattr(args, name) is None:
                raise InputError(f"{args.verb} needs --{name}")
        verdict, payload = VERBS[args.verb](args)
    except (InputError, SupercircleError, ValueError, KeyError, TypeError) as exc:
        print(f"supercircle: error: {exc}", file=stderr)
        return 2
    report = {"verb": args.verb, "inputs": _inputs(args), "verdict": bool(verdict)}
    report.update(payload)
    stdout.write(json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2) + "\n")
    return 0 if verdict else 1


def main():
    sys.exit(run())
