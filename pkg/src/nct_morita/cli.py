"""Command-line front end.

Every subcommand prints exactly one JSON document.  Exit codes: 0 for
success or a passing check, 1 for a failing check or an undefined action,
2 for malformed input (with an ``{"error": ...}`` document).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .clifford import clifford_generators, verify_clifford
from .cyclotomic import Cyclotomic
from .dirac import involution_check, transform_word
from .errors import ActionUndefined, MoritaError, SchemaError, Theta11Singular
from .exact import Phase, SkewMatrix
from .finite_rep import clock_shift_rep, eval_element, max_entry
from .heisenberg import FAMILIES, GridSpec, verify_module
from .serialize import (
    clifford_to_doc,
    dirac_to_doc,
    dumps,
    read_dirac,
    read_int_matrix,
    read_theta,
    read_torus_element,
    read_word,
    theta_to_doc,
)
from .sonn import SonnElement, act_on_theta, verify_membership, word_act
from .torus import TorusElement, fluctuate_dim1, star

SEED_VAR = "NCT_MORITA_SEED"


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _seed() -> int:
    raw = os.environ.get(SEED_VAR, "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_VAR} must be an integer, got {raw!r}") from None


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _json_or_file(value: str):
    text = value.strip()
    if text.startswith(("[", "{", '"')):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid inline JSON: {exc}") from None
    return _load_json(value)


def _grid(value: str) -> GridSpec:
    parts = value.split(",")
    if len(parts) != 3:
        raise InputError("--grid takes N,L,P")
    try:
        return GridSpec(int(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise InputError(f"bad --grid {value!r}: {exc}") from None


def _positive_float(value: str) -> float:
    try:
        x = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _positive_int(value: str) -> int:
    try:
        x = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if x < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return x


# -- subcommands ---------------------------------------------------------

def cmd_theta_act(args) -> tuple[dict, int]:
    theta = read_theta(_load_json(args.theta))
    if args.element:
        m = read_int_matrix(_load_json(args.element))
        if not verify_membership(m):
            raise SchemaError("matrix is not in SO(n,n|Z)")
        try:
            return theta_to_doc(act_on_theta(SonnElement(m, check=False), theta)), 0
        except ActionUndefined as exc:
            return {"error": {"type": "ActionUndefined", "message": str(exc), "step": None}}, 1
    word = read_word(_json_or_file(args.word))
    try:
        return theta_to_doc(word_act(word, theta)), 0
    except ActionUndefined as exc:
        return {"error": {"type": "ActionUndefined", "message": str(exc), "step": exc.step}}, 1


def cmd_theta_verify(args) -> tuple[dict, int]:
    m = read_int_matrix(_load_json(args.matrix))
    ok = verify_membership(m)
    return {"n": m.shape[0] // 2, "member": ok, "det": str(m.det())}, 0 if ok else 1


def cmd_dirac_transform(args) -> tuple[dict, int]:
    d = read_dirac(_load_json(args.dirac))
    theta = read_theta(_load_json(args.theta))
    word = read_word(_json_or_file(args.word))
    try:
        d2, theta2 = transform_word(d, theta, word)
    except (ActionUndefined, Theta11Singular) as exc:
        step = getattr(exc, "step", None)
        return {"error": {"type": type(exc).__name__, "message": str(exc), "step": step}}, 1
    return {
        "dirac": dirac_to_doc(d2),
        "theta": theta_to_doc(theta2),
        "mu_shift_unverified": d2.mu_shift_unverified,
    }, 0


def cmd_dirac_involution(args) -> tuple[dict, int]:
    d = read_dirac(_load_json(args.dirac))
    theta = read_theta(_load_json(args.theta))
    try:
        r = involution_check(d, theta)
    except Theta11Singular as exc:
        return {"error": {"type": "Theta11Singular", "message": str(exc)}, "pass": False}, 1
    doc = {
        "theta_prime": theta_to_doc(r["theta_prime"]),
        "tau_prime": r["tau_prime"].to_strings(),
        "tau_restored": r["tau_restored"].to_strings(),
        "pass": r["pass"],
    }
    return doc, 0 if r["pass"] else 1


def cmd_clifford_emit(args) -> tuple[dict, int]:
    rep = clifford_generators(args.n)
    report = verify_clifford(rep, args.tol)
    return clifford_to_doc(rep, report), 0 if report.passed else 1


def module_report_to_doc(report) -> dict:
    g = report.grid
    doc = {
        "n": report.n,
        "grid": {"N": g.N, "L": g.L, "P": g.P},
        "tol": report.tol,
        "theta": theta_to_doc(report.theta)["theta"] if report.theta is not None else None,
        "theta_prime": report.theta_prime.to_strings() if report.theta_prime is not None else None,
        "error": report.error,
        "residuals": {k: report.residuals[k] for k in FAMILIES if k in report.residuals},
        "hermitian": report.hermitian,
        "curvature": {
            "estimate": report.curvature_estimate,
            "expected": None if report.curvature_expected is None else str(report.curvature_expected),
        },
        "connection_predictions": [
            {"x": list(x), "value": [str(v) for v in pred]} for x, pred in report.predictions
        ],
    }
    if report.diagnostics:
        doc["diagnostics"] = dict(report.diagnostics)
    doc["pass"] = report.passed
    return doc


def cmd_module_verify(args) -> tuple[dict, int]:
    theta = read_theta(_load_json(args.theta))
    report = verify_module(
        theta,
        _grid(args.grid),
        args.tol,
        seed=_seed(),
        strict=not args.no_strict,
        diagnostics=args.diagnostics,
    )
    return module_report_to_doc(report), 0 if report.passed else 1


def cmd_algebra_check(args) -> tuple[dict, int]:
    theta = read_theta(_load_json(args.theta))
    rep = clock_shift_rep(theta)
    rng = np.random.default_rng(_seed())
    n = theta.n
    prod_defect = star_defect = 0.0
    relation_exact = True
    for _ in range(args.count):
        x, y = (tuple(int(v) for v in rng.integers(-args.box, args.box + 1, size=n)) for _ in range(2))
        mx, my = TorusElement.monomial(theta, x), TorusElement.monomial(theta, y)
        ex, ey = eval_element(rep, mx), eval_element(rep, my)
        prod_defect = max(prod_defect, max_entry(eval_element(rep, mx * my) - ex @ ey))
        star_defect = max(star_defect, max_entry(eval_element(rep, star(mx)) - ex.conj().T))
        lhs = mx * my
        rhs = (my * mx).scale(Cyclotomic.phase(Phase(theta.pairing(x, y))))
        relation_exact = relation_exact and lhs == rhs
    ok = relation_exact and prod_defect < args.tol and star_defect < args.tol
    return {
        "n": n,
        "dim": rep.dim,
        "products": args.count,
        "max_product_defect": prod_defect,
        "max_star_defect": star_defect,
        "relation_exact": relation_exact,
        "tol": args.tol,
        "pass": ok,
    }, 0 if ok else 1


def _random_selfadjoint(theta: SkewMatrix, rng, kmax: int = 2) -> TorusElement:
    terms = {(0,): Cyclotomic.rational(Fraction(int(rng.integers(-9, 10)), 4))}
    for k in range(1, kmax + 1):
        re, im = (Fraction(int(v), 4) for v in rng.integers(-9, 10, size=2))
        terms[(k,)] = Cyclotomic.gaussian(re, im)
        terms[(-k,)] = Cyclotomic.gaussian(re, -im)
    return TorusElement(theta, terms)


def cmd_example_circle(args) -> tuple[dict, int]:
    if args.coeffs:
        c = read_torus_element(_load_json(args.coeffs))
    else:
        c = _random_selfadjoint(SkewMatrix([[0]]), np.random.default_rng(_seed()))
    r = fluctuate_dim1(c, args.cutoff)
    ok = r.residual < args.tol
    return {
        "cutoff": r.cutoff,
        "epsilon_J": r.epsilon,
        "interior_size": r.interior,
        "self_adjoint": r.self_adjoint,
        "residual": r.residual,
        "tol": args.tol,
        "pass": ok,
    }, 0 if ok else 1


# -- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nct-morita", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    theta = sub.add_parser("theta").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    act = theta.add_parser("act", help="apply a generator word or group element to theta")
    act.add_argument("--theta", required=True)
    how = act.add_mutually_exclusive_group(required=True)
    how.add_argument("--word", help="inline JSON list or path to a word document")
    how.add_argument("--element", help="path to a group element document")
    act.set_defaults(func=cmd_theta_act)
    ver = theta.add_parser("verify-element", help="check SO(n,n|Z) membership")
    ver.add_argument("--matrix", required=True)
    ver.set_defaults(func=cmd_theta_verify)

    dirac = sub.add_parser("dirac").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    tr = dirac.add_parser("transform", help="move Dirac data and theta along a word")
    tr.add_argument("--dirac", required=True)
    tr.add_argument("--theta", required=True)
    tr.add_argument("--word", required=True)
    tr.set_defaults(func=cmd_dirac_transform)
    inv = dirac.add_parser("involution-check", help="apply sigma2 twice to the frame")
    inv.add_argument("--dirac", required=True)
    inv.add_argument("--theta", required=True)
    inv.set_defaults(func=cmd_dirac_involution)

    cl = sub.add_parser("clifford").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    emit = cl.add_parser("emit", help="print Clifford generators")
    emit.add_argument("--n", type=_positive_int, required=True)
    emit.add_argument("--tol", type=_positive_float, default=1e-12)
    emit.set_defaults(func=cmd_clifford_emit)

    mod = sub.add_parser("module").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    mv = mod.add_parser("verify", help="run the bimodule battery")
    mv.add_argument("--theta", required=True)
    mv.add_argument("--grid", default="2048,16,8", help="N,L,P")
    mv.add_argument("--tol", type=_positive_float, default=1e-6)
    mv.add_argument("--no-strict", action="store_true", help="do not stop at boundary violations")
    mv.add_argument("--diagnostics", action="store_true", help="also report mirrored sign conventions")
    mv.set_defaults(func=cmd_module_verify)

    alg = sub.add_parser("algebra").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    chk = alg.add_parser("check", help="symbolic products against clock-shift matrices")
    chk.add_argument("--theta", required=True)
    chk.add_argument("--count", type=_positive_int, default=500)
    chk.add_argument("--box", type=_positive_int, default=3)
    chk.add_argument("--tol", type=_positive_float, default=1e-10)
    chk.set_defaults(func=cmd_algebra_check)

    ex = sub.add_parser("example").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    circ = ex.add_parser("circle", help="inner fluctuation on the circle")
    circ.add_argument("--cutoff", type=_positive_int, default=64)
    circ.add_argument("--coeffs", help="torus element document with n = 1")
    circ.add_argument("--tol", type=_positive_float, default=1e-12)
    circ.set_defaults(func=cmd_example_circle)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        doc, code = args.func(args)
    except (InputError, MoritaError, ValueError, TypeError, KeyError) as exc:
        doc = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        code = 2
    stdout.write(dumps(doc) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
