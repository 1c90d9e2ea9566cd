"""JSON encodings.  Integers travel as decimal strings so nothing is truncated
to 64 bits on the way through other tools."""
from __future__ import annotations

import json
import os
import re
import sys
import tempfile
from fractions import Fraction
from typing import Any

from .certificates import Certificate
from .errors import DimGroupError, MalformedInput
from .exactnum import AlgebraicNumber, SymbolicReal
from .fgroup import FGroupReport
from .groups import (
    BasisRule,
    GroupPresentation,
    InvarianceResult,
    MonomialMatrix,
    build_group,
    parse_pattern,
)
from .laurent import LaurentPoly
from .poly import Poly
from .symbolic import Scalar, SymExpr

SCHEMA_VERSION = 1

# certificate integers routinely run to tens of thousands of digits
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_json(text_or_path: str) -> Any:
    """Inline JSON, or ``@path`` / an existing path to a JSON file."""
    src = text_or_path
    if src.startswith("@"):
        src = src[1:]
        try:
            with open(src, encoding="utf-8") as fh:
                src = fh.read()
        except OSError as exc:
            raise MalformedInput(f"cannot read {text_or_path[1:]}: {exc}") from None
    elif not src.lstrip().startswith(("{", "[", '"')) and os.path.isfile(src):
        with open(src, encoding="utf-8") as fh:
            src = fh.read()
    try:
        return json.loads(src)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None


# ---------------------------------------------------------------------------
# scalars

def _int(x, what="integer") -> int:
    if isinstance(x, bool):
        raise MalformedInput(f"expected {what}, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and re.fullmatch(r"\s*[+-]?\d+\s*", x):
        return int(x)
    raise MalformedInput(f"expected {what} (decimal string), got {x!r}")


def _frac(x) -> Fraction:
    if isinstance(x, bool):
        raise MalformedInput("expected a rational, got a boolean")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and re.fullmatch(r"\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*", x):
        try:
            return Fraction(x.replace(" ", ""))
        except ZeroDivisionError:
            raise MalformedInput(f"zero denominator in {x!r}") from None
    if isinstance(x, dict) and x.get("kind") == "rational":
        den = _int(x.get("den", "1"))
        if den == 0:
            raise MalformedInput("zero denominator")
        return Fraction(_int(x.get("num")), den)
    raise MalformedInput(f"expected a rational, got {x!r}")


def enc_int(n: int) -> str:
    return str(int(n))


def enc_frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def enc_rational(x) -> dict:
    x = Fraction(x)
    return {"kind": "rational", "num": str(x.numerator), "den": str(x.denominator)}


# ---------------------------------------------------------------------------
# numbers

def enc_number(x) -> dict:
    if isinstance(x, AlgebraicNumber):
        return {"kind": "algebraic", "minpoly": [enc_frac(c) for c in x.minpoly.coeffs],
                "interval": [enc_frac(x.lo), enc_frac(x.hi)], "asserted_minimal": bool(x.asserted_minimal)}
    if isinstance(x, SymbolicReal):
        out = {"kind": "symbol", "name": x.name}
        if x.approx is not None:
            out["approx"] = x.approx
            out["radius"] = x.radius
        return out
    return enc_rational(x)


def dec_number(d, assume_irreducible: bool = False):
    if isinstance(d, (int, str)) and not isinstance(d, bool):
        return _frac(d)
    if not isinstance(d, dict) or "kind" not in d:
        raise MalformedInput(f"expected a number object, got {d!r}")
    kind = d["kind"]
    if kind == "rational":
        return _frac(d)
    if kind == "algebraic":
        try:
            lo, hi = d["interval"]
            coeffs = [_int(c, "minpoly coefficient") for c in d["minpoly"]]
        except (KeyError, TypeError, ValueError):
            raise MalformedInput("algebraic number needs minpoly and a two-element interval") from None
        asserted = bool(d.get("asserted_minimal", False)) or assume_irreducible
        return AlgebraicNumber(Poly(coeffs), _frac(lo), _frac(hi), asserted_minimal=asserted)
    if kind == "symbol":
        return dec_symbol(d)
    raise MalformedInput(f"unknown number kind {kind!r}")


def dec_symbol(d) -> SymbolicReal:
    if isinstance(d, str):
        return SymbolicReal(d)
    if not isinstance(d, dict) or "name" not in d:
        raise MalformedInput(f"expected a symbol, got {d!r}")
    approx = d.get("approx")
    radius = d.get("radius", 0.0)
    if approx is not None and not isinstance(approx, (int, float)):
        raise MalformedInput("symbol approx must be a JSON number")
    if not isinstance(radius, (int, float)):
        raise MalformedInput("symbol radius must be a JSON number")
    return SymbolicReal(str(d["name"]), None if approx is None else float(approx), float(radius))


def as_algebraic(x) -> AlgebraicNumber:
    if isinstance(x, AlgebraicNumber):
        return x
    if isinstance(x, Fraction):
        return AlgebraicNumber.from_rational(x)
    raise MalformedInput("expected an algebraic or rational number")


# ---------------------------------------------------------------------------
# polynomials

def enc_poly(p: Poly) -> list:
    return [enc_frac(c) for c in p.coeffs]


def dec_poly(d) -> Poly:
    if isinstance(d, dict) and "coeffs" in d:
        lp = dec_laurent(d)
        if lp.lowest < 0:
            raise MalformedInput("expected an ordinary polynomial")
        return Poly([0] * lp.lowest + list(lp.coeffs))
    if not isinstance(d, list):
        raise MalformedInput(f"expected a coefficient array, got {d!r}")
    return Poly([_frac(c) for c in d])


def enc_laurent(f: LaurentPoly) -> dict:
    return {"lowest": str(f.lowest), "coeffs": [enc_frac(c) for c in f.coeffs]}


def dec_laurent(d) -> LaurentPoly:
    if isinstance(d, list):
        return LaurentPoly(0, [_frac(c) for c in d])
    if not isinstance(d, dict) or "coeffs" not in d:
        raise MalformedInput(f"expected a Laurent polynomial object, got {d!r}")
    if not isinstance(d["coeffs"], list):
        raise MalformedInput("Laurent coeffs must be an array")
    return LaurentPoly(_int(d.get("lowest", "0")), [_frac(c) for c in d["coeffs"]])


# ---------------------------------------------------------------------------
# scalars and matrices

_FACTOR = re.compile(r"^([A-Za-z_]\w*)(?:\^\(?([+-]?\d+)\)?)?$")


def dec_scalar(d) -> Scalar:
    if isinstance(d, dict):
        exps = d.get("exps", {})
        if not isinstance(exps, dict):
            raise MalformedInput("scalar exps must be an object")
        return Scalar.of(_frac(d.get("coeff", "1")), _int(d.get("radical", 0)),
                         **{str(k): _int(v) for k, v in exps.items()})
    if isinstance(d, int) and not isinstance(d, bool):
        return Scalar(Fraction(d))
    if not isinstance(d, str):
        raise MalformedInput(f"expected a scalar, got {d!r}")
    coeff, radical, exps = Fraction(1), 0, {}
    for tok in d.replace(" ", "").split("*"):
        if not tok:
            raise MalformedInput(f"bad scalar {d!r}")
        if re.fullmatch(r"[+-]?\d+(/\d+)?", tok):
            coeff *= _frac(tok)
        elif tok == "cbrt2":
            radical += 1
        elif tok == "cbrt4":
            radical += 2
        else:
            m = _FACTOR.match(tok)
            if not m:
                raise MalformedInput(f"bad scalar factor {tok!r}")
            exps[m.group(1)] = exps.get(m.group(1), 0) + int(m.group(2) or 1)
    return Scalar.of(coeff, radical, **exps)


def enc_scalar(s: Scalar) -> dict:
    return {"coeff": enc_frac(s.coeff), "radical": s.mono.radical,
            "exps": {k: v for k, v in s.mono.exps}}


def enc_matrix(M: MonomialMatrix) -> dict:
    return {"shape": M.shape, "entries": [enc_scalar(e) for e in M.entries]}


def dec_matrix(d) -> MonomialMatrix:
    if not isinstance(d, dict) or "entries" not in d:
        raise MalformedInput(f"expected a matrix object, got {d!r}")
    if not isinstance(d["entries"], list):
        raise MalformedInput("matrix entries must be an array")
    return MonomialMatrix(d.get("shape", "diagonal"), tuple(dec_scalar(e) for e in d["entries"]))


# ---------------------------------------------------------------------------
# groups

def dec_presentation(d) -> GroupPresentation:
    if not isinstance(d, dict) or "tag" not in d:
        raise MalformedInput("presentation needs a tag")
    tag = d["tag"]
    syms = d.get("symbols", [])
    if not isinstance(syms, list):
        raise MalformedInput("symbols must be an array")
    symbols = [dec_symbol(s) for s in syms]
    if tag != "custom":
        options = {k: v for k, v in d.items() if k in ("beta_relation",)}
        return build_group(tag, symbols, **options)
    rules = []
    raw = d.get("basis_rules")
    if not isinstance(raw, list) or not raw:
        raise MalformedInput("custom presentation needs basis_rules")
    for r in raw:
        if not isinstance(r, dict):
            raise MalformedInput("basis rule must be an object")
        degrees = r.get("degrees", r.get("degree_parity", "all"))
        if isinstance(degrees, list):
            degrees = tuple(_int(x) for x in degrees)
        coords = r.get("coords")
        if not isinstance(coords, list):
            raise MalformedInput("basis rule coords must be an array")
        rules.append(BasisRule(_int(r.get("radical", 0)), degrees, str(r.get("ring", "Z")),
                               tuple(parse_pattern(str(c)) for c in coords), str(r.get("family", "main"))))
    dim = _int(d.get("dim", len(rules[0].coords)))
    return GroupPresentation(dim, tuple(symbols), tuple(rules), "custom", tuple(d.get("assumptions", ())))


def enc_presentation(P: GroupPresentation) -> dict:
    out = {"tag": P.tag, "symbols": [enc_number(s) for s in P.symbols]}
    if P.tag == "custom":
        out["dim"] = P.dim
        out["basis_rules"] = [
            {"radical": r.radical, "family": r.family, "ring": r.ring,
             "degrees": r.degrees if isinstance(r.degrees, str) else list(r.degrees),
             "coords": ["0" if c is None else str(c) for c in r.coords]}
            for r in P.rules
        ]
    return out


def dec_element(d) -> dict:
    if isinstance(d, dict) and "coeffs" in d:
        d = d["coeffs"]
    if not isinstance(d, list):
        raise MalformedInput("element must be an array of slot coefficients")
    out = {}
    for item in d:
        if not isinstance(item, dict) or "degree" not in item or "coeff" not in item:
            raise MalformedInput(f"bad element entry {item!r}")
        key = (_int(item.get("radical", 0)), _int(item["degree"]), str(item.get("family", "main")))
        out[key] = out.get(key, 0) + _frac(item["coeff"])
    return {k: v for k, v in out.items() if v}


def enc_element(coeffs) -> list:
    items = dict(getattr(coeffs, "coeffs", coeffs))
    out = []
    for (rad, deg, fam), c in sorted(items.items()):
        entry = {"radical": rad, "degree": deg, "coeff": enc_frac(c)}
        if fam != "main":
            entry["family"] = fam
        out.append(entry)
    return out


def enc_expr(e: SymExpr) -> list:
    return [{"coeff": enc_frac(c), "radical": m.radical, "exps": dict(m.exps)} for m, c in sorted(e.items())]


def enc_invariance(res: InvarianceResult) -> dict:
    out = {"invariant": res.invariant, "window": res.window, "slots_checked": res.slots_checked}
    if not res.invariant:
        out.update(witness=enc_element(res.witness), direction=res.direction, reason=res.reason)
    return out


# ---------------------------------------------------------------------------
# certificates

def enc_certificate(c: Certificate) -> dict:
    consts = {}
    for k, v in sorted(c.constants.items()):
        consts[k] = enc_laurent(v) if isinstance(v, LaurentPoly) else enc_int(v)
    return {"schema_version": SCHEMA_VERSION, "kind": "certificate", "regime": c.regime,
            "a": enc_number(c.a), "b": enc_number(c.b), "target": enc_matrix(c.target),
            "identity": enc_laurent(c.identity), "constants": consts}


def dec_certificate(d) -> Certificate:
    if not isinstance(d, dict):
        raise MalformedInput("certificate must be a JSON object")
    if d.get("schema_version") not in (SCHEMA_VERSION, str(SCHEMA_VERSION)):
        raise MalformedInput(f"unsupported schema_version {d.get('schema_version')!r}")
    try:
        consts = {}
        for k, v in d.get("constants", {}).items():
            consts[k] = dec_laurent(v) if isinstance(v, dict) else _int(v)
        a = as_algebraic(dec_number(d["a"]))
        b = dec_number(d["b"])
        return Certificate(str(d["regime"]), a, b, dec_matrix(d["target"]), dec_laurent(d["identity"]), consts)
    except KeyError as exc:
        raise MalformedInput(f"certificate missing field {exc}") from None


# ---------------------------------------------------------------------------
# realization reports

def enc_report(r: FGroupReport, full: bool = False, samples: int = 20) -> dict:
    families = []
    for o in r.outcomes:
        f = o.family
        refs = o.refutations if full else o.refutations[:samples]
        families.append({
            "shape": f.shape, "rational_height": f.rational_height, "exponent_bound": f.exponent_bound,
            "radical_parts": f.radical_parts, "refuted": len(o.refutations), "skipped_in_claim": len(o.skipped),
            "counterexamples": [enc_matrix(m) for m in o.counterexamples],
            "refutations": [{"candidate": enc_matrix(x.candidate), "witness": enc_element(x.witness),
                             "direction": x.direction, "reason": x.reason} for x in refs],
            "refutations_truncated": not full and len(o.refutations) > samples,
        })
    return {"schema_version": SCHEMA_VERSION, "kind": "fgroup_report", "presentation_tag": r.presentation_tag,
            "claimed_group": r.claimed_group, "generator": enc_matrix(r.generator),
            "substitutions": r.substitutions,
            "verified_inclusions": [p.handle() for p in r.verified_inclusions],
            "families": families, "assumptions": list(r.assumptions), "verdict": r.verdict}


def error_payload(exc: DimGroupError) -> dict:
    return {"schema_version": SCHEMA_VERSION, "status": "error", "error": exc.code, "message": str(exc)}

