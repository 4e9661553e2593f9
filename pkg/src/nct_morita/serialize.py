"""JSON readers and writers.

Rationals travel as ``"p/q"`` strings, complex numbers as ``[re, im]``.
:func:`dumps` writes keys in insertion order and floats with 17
significant digits, so equal inputs give byte-identical output.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

import numpy as np

from .clifford import CliffordRep, CliffordReport
from .cyclotomic import Cyclotomic
from .dirac import DiracData
from .errors import NotRational, SchemaError
from .exact import Phase, RatMatrix, SkewMatrix, as_rational
from .sonn import SIGMA2, GeneratorWord, Nu, Rho, SonnElement
from .torus import TorusElement


# -- output --------------------------------------------------------------

def _dump(obj: Any, out: list[str]) -> None:
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        out.append(format(x, ".17g") if math.isfinite(x) else "null")
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, Fraction):
        out.append(json.dumps(str(obj)))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(k), ensure_ascii=False))
            out.append(": ")
            _dump(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _dump(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Deterministic JSON text with floats at 17 significant digits."""
    out: list[str] = []
    _dump(obj, out)
    return "".join(out)


# -- helpers -------------------------------------------------------------

def _require(doc: Any, key: str, kind=None):
    if not isinstance(doc, dict) or key not in doc:
        raise SchemaError(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"field {key!r} must be {kind.__name__}")
    return value


def _rational(value) -> Fraction:
    if isinstance(value, float):
        raise SchemaError(f"rationals must be strings like '1/3', got float {value!r}")
    try:
        return as_rational(value)
    except NotRational as exc:
        raise SchemaError(str(exc)) from None


def _integer(value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"expected an integer, got {value!r}")
    return value


def _matrix(rows, entry) -> list[list]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError("matrix must be a list of rows")
    return [[entry(v) for v in r] for r in rows]


def _check_n(doc: dict, size: int) -> None:
    if "n" in doc and _integer(doc["n"]) != size:
        raise SchemaError(f"declared n={doc['n']} but the matrix has size {size}")


def _complex_pair(value) -> complex:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise SchemaError(f"complex numbers are [re, im] pairs, got {value!r}")
    return complex(value[0], value[1])


def complex_pair(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def complex_matrix_to_doc(m) -> list:
    return [[complex_pair(v) for v in row] for row in np.asarray(m)]


# -- theta ---------------------------------------------------------------

def theta_to_doc(theta: SkewMatrix) -> dict:
    return {"n": theta.n, "theta": theta.to_strings()}


def read_theta(doc: dict) -> SkewMatrix:
    rows = _matrix(_require(doc, "theta"), _rational)
    _check_n(doc, len(rows))
    try:
        return SkewMatrix(rows)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


# -- group elements and words -------------------------------------------

def sonn_to_doc(g: SonnElement) -> dict:
    return {"n": g.n, "matrix": g.to_int_rows()}


def read_int_matrix(doc: dict) -> RatMatrix:
    """The raw 2n x 2n integer matrix; membership is not checked here."""
    rows = _matrix(_require(doc, "matrix"), _integer)
    if not rows or any(len(r) != len(rows) for r in rows) or len(rows) % 2:
        raise SchemaError("matrix must be square of even size")
    if "n" in doc and _integer(doc["n"]) * 2 != len(rows):
        raise SchemaError(f"declared n={doc['n']} but the matrix has size {len(rows)}")
    return RatMatrix(rows)


def read_sonn(doc: dict) -> SonnElement:
    m = read_int_matrix(doc)
    try:
        return SonnElement(m)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def word_to_doc(word: GeneratorWord) -> dict:
    out = []
    for t in word:
        if isinstance(t, Rho):
            out.append({"rho": [[int(v) for v in r] for r in t.R.rows]})
        elif isinstance(t, Nu):
            out.append({"nu": [[int(v) for v in r] for r in t.N.rows]})
        else:
            out.append("sigma2")
    return {"word": out}


def read_word(doc) -> GeneratorWord:
    """Accepts ``{"word": [...]}`` or the bare list."""
    items = doc["word"] if isinstance(doc, dict) and "word" in doc else doc
    if not isinstance(items, list):
        raise SchemaError("a word is a list of generator tokens")
    tokens = []
    for item in items:
        if item == "sigma2":
            tokens.append(SIGMA2)
        elif isinstance(item, dict) and len(item) == 1 and "rho" in item:
            tokens.append(Rho(RatMatrix(_matrix(item["rho"], _integer))))
        elif isinstance(item, dict) and len(item) == 1 and "nu" in item:
            tokens.append(Nu(RatMatrix(_matrix(item["nu"], _integer))))
        else:
            raise SchemaError(f"unknown generator token {item!r}")
    return GeneratorWord(tokens)


# -- Dirac data ----------------------------------------------------------

def dirac_to_doc(d: DiracData) -> dict:
    doc = {"n": d.n, "tau": d.tau.to_strings()}
    if d.B is not None:
        doc["B"] = complex_matrix_to_doc(d.B)
    doc["mu_shift"] = [str(v) for v in d.mu_shift]
    return doc


def read_dirac(doc: dict) -> DiracData:
    tau = _matrix(_require(doc, "tau"), _rational)
    n = _integer(doc["n"]) if "n" in doc else len(tau)
    b = doc.get("B")
    if b is not None:
        b = np.array(_matrix(b, _complex_pair), dtype=complex)
    mu = doc.get("mu_shift", ())
    if not isinstance(mu, (list, tuple)):
        raise SchemaError("mu_shift must be a list")
    try:
        return DiracData(n, RatMatrix(tau), b, tuple(_rational(v) for v in mu))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


# -- torus elements ------------------------------------------------------

def torus_element_to_doc(a: TorusElement) -> dict:
    terms = []
    for x, c in a.monomials():
        for root, coef in sorted(c.terms.items()):
            terms.append({"x": list(x), "re": str(coef), "im": "0", "phase": str(root)})
    return {"n": a.n, "theta": a.theta.to_strings(), "terms": terms}


def read_torus_element(doc: dict) -> TorusElement:
    theta = read_theta(doc)
    terms = {}
    raw = _require(doc, "terms", list)
    for t in raw:
        x = tuple(_integer(v) for v in _require(t, "x", list))
        re = _rational(t.get("re", "0"))
        im = _rational(t.get("im", "0"))
        phase = _rational(t.get("phase", "0"))
        c = Cyclotomic.gaussian(re, im).times_phase(Phase(phase))
        terms[x] = terms[x] + c if x in terms else c
    try:
        return TorusElement(theta, terms)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


# -- Clifford ------------------------------------------------------------

def clifford_to_doc(rep: CliffordRep, report: CliffordReport | None = None) -> dict:
    doc = {
        "n": rep.n,
        "dim": rep.dim,
        "generators": [complex_matrix_to_doc(g) for g in rep.generators],
    }
    if report is not None:
        doc["verify"] = {
            "anticommutator_defect": report.anticommutator_defect,
            "adjoint_defect": report.adjoint_defect,
            "traces": [complex_pair(t) for t in report.traces],
            "tol": report.tol,
            "pass": report.passed,
        }
    return doc


def read_clifford(doc: dict) -> CliffordRep:
    gens = tuple(
        np.array(_matrix(g, _complex_pair), dtype=complex) for g in _require(doc, "generators", list)
    )
    return CliffordRep(n=_integer(doc["n"]), dim=_integer(doc["dim"]), generators=gens)
