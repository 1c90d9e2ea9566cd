"""Command-line entry point.

Exit codes: 0 success, 1 malformed input, 2 negative mathematical result,
3 hypothesis or input-domain violation, 4 search exhausted or over budget.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from . import codec
from .certificates import certify
from .errors import DimGroupError, MalformedInput
from .exactnum import AlgebraicNumber
from .fgroup import DEFAULT_BUDGET, DEFAULT_EXPO, DEFAULT_HEIGHT, DEFAULT_NBOUND, realize_dispatch
from .groups import (
    check_invariance,
    density_witness,
    membership,
    riesz_interpolate,
)
from .identities import bezout_integerized, monic_lemma
from .numtheory import solve_unit_power
from .symbolic import expr_str
from .verify import verify_certificate

COMMANDS = ("bezout", "monic-lemma", "unit-power", "certify", "verify",
            "member", "invariant", "density", "riesz", "fgroup")


@dataclass
class Outcome:
    status: int
    result: dict
    text: str
    files: Tuple[Tuple[str, str], ...] = ()  # (path, content) written after success


def _need(payload: dict, key: str):
    if key not in payload:
        raise MalformedInput(f"missing field {key!r}")
    return payload[key]


def _ok(result: dict, text: str, status: int = 0, files=()) -> Outcome:
    result = dict(result, schema_version=codec.SCHEMA_VERSION, status="ok" if status == 0 else "negative")
    return Outcome(status, result, text, tuple(files))


# ---------------------------------------------------------------------------
# command handlers: payload dict -> Outcome

def cmd_bezout(p: dict, opts) -> Outcome:
    psi1, psi2 = codec.dec_poly(_need(p, "psi1")), codec.dec_poly(_need(p, "psi2"))
    if not (psi1.is_integral() and psi2.is_integral()):
        raise MalformedInput("Bezout inputs must have integer coefficients")
    res = bezout_integerized(psi1, psi2)
    text = f"({res.a_poly})*({psi1}) + ({res.b_poly})*({psi2}) = {res.m}"
    return _ok({"command": "bezout", "a_poly": codec.enc_poly(res.a_poly),
                "b_poly": codec.enc_poly(res.b_poly), "m": codec.enc_int(res.m)}, text)


def cmd_monic_lemma(p: dict, opts) -> Outcome:
    psi = codec.dec_poly(_need(p, "psi"))
    m = codec._int(_need(p, "m"))
    res = monic_lemma(psi, m)
    text = f"{m}*({res.phi1}) + ({psi})*({res.phi2}) + t^{res.n} = 1   [{res.steps} powers enumerated]"
    return _ok({"command": "monic-lemma", "phi1": codec.enc_laurent(res.phi1), "phi2": codec.enc_laurent(res.phi2),
                "n": codec.enc_int(res.n), "steps": codec.enc_int(res.steps)}, text)


def cmd_unit_power(p: dict, opts) -> Outcome:
    r, q = codec._int(_need(p, "r")), codec._int(_need(p, "q"))
    min_n = codec._int(p.get("min_N", "0"))
    s, N = solve_unit_power(r, q, min_n)
    return _ok({"command": "unit-power", "s": codec.enc_int(s), "N": codec.enc_int(N)},
               f"({s})*({r}) + ({q})^{N} = 1")


def _cert_name(i: int) -> str:
    return ("certificate_forward.json", "certificate_inverse.json")[i]


def cmd_certify(p: dict, opts) -> Outcome:
    assume = bool(getattr(opts, "assume_irreducible", False) or p.get("assume_irreducible"))
    a = codec.as_algebraic(codec.dec_number(_need(p, "a"), assume))
    b = codec.dec_number(_need(p, "b"), assume)
    if not isinstance(b, (AlgebraicNumber, Fraction)):
        raise MalformedInput("b must be rational or algebraic")
    phi = codec.dec_laurent(p["phi"]) if p.get("phi") is not None else None
    pp = codec._int(p["p"]) if "p" in p else None
    qq = codec._int(p["q"]) if "q" in p else None
    certs = certify(a, b, phi, pp, qq)
    encoded = [codec.enc_certificate(c) for c in certs]
    lines = []
    files = []
    out_dir = p.get("output_path") or getattr(opts, "output", None)
    for i, (c, e) in enumerate(zip(certs, encoded)):
        lines.append(f"[{c.regime}] P(t) = {c.identity}")
        lines.append(f"    P(A) = {c.target}")
        if out_dir:
            files.append((os.path.join(out_dir, _cert_name(i)), codec.dumps(e)))
    result = {"command": "certify", "regime": certs[0].regime, "certificates": encoded}
    if out_dir:
        result["files"] = [f for f, _ in files]
    return _ok(result, "\n".join(lines), files=files)


def cmd_verify(p: dict, opts) -> Outcome:
    raw = _need(p, "certificate")
    if isinstance(raw, str):
        raw = codec.load_json(raw if raw.startswith("@") else "@" + raw)
    cert = codec.dec_certificate(raw)
    v = verify_certificate(cert)
    text = ("accepted" if v.accepted else f"rejected: {v.reason}") + ("" if not v.accepted else
                                                                     f" (nontrivial: {v.nontrivial})")
    return _ok({"command": "verify", "accepted": v.accepted, "reason": v.reason, "nontrivial": v.nontrivial},
               text, 0 if v.accepted else 2)


def cmd_member(p: dict, opts) -> Outcome:
    P = codec.dec_presentation(_need(p, "group"))
    elem = codec.dec_element(_need(p, "element"))
    ok, why = membership(elem, P)
    return _ok({"command": "member", "member": ok, "reason": why}, f"{'member' if ok else 'not a member'}: {why}",
               0 if ok else 2)


def cmd_invariant(p: dict, opts) -> Outcome:
    P = codec.dec_presentation(_need(p, "group"))
    M = codec.dec_matrix(_need(p, "matrix"))
    res = check_invariance(M, P)
    if res.invariant:
        text = f"{M} leaves G invariant ({res.slots_checked} slots checked, window {res.window})"
    else:
        text = f"{M} is not invariant ({res.direction}): {res.reason}"
    return _ok(dict(codec.enc_invariance(res), command="invariant"), text, 0 if res.invariant else 2)


def cmd_density(p: dict, opts) -> Outcome:
    P = codec.dec_presentation(_need(p, "group"))
    eps = codec._frac(_need(p, "eps"))
    dw = density_witness(P, eps)
    lines = [f"{codec.enc_element(e)}  |v| <= {float(b):.3e}" for e, b in zip(dw.elements, dw.norm_bounds)]
    lines.append(f"det = {expr_str(dw.determinant)}")
    return _ok({"command": "density", "elements": [codec.enc_element(e) for e in dw.elements],
                "norm_bounds": [codec.enc_frac(b) for b in dw.norm_bounds],
                "determinant": codec.enc_expr(dw.determinant)}, "\n".join(lines))


def cmd_riesz(p: dict, opts) -> Outcome:
    P = codec.dec_presentation(_need(p, "group"))
    g1, g2, h1, h2 = (codec.dec_element(_need(p, k)) for k in ("g1", "g2", "h1", "h2"))
    z = riesz_interpolate(P, g1, g2, h1, h2)
    return _ok({"command": "riesz", "z": codec.enc_element(z)}, f"z = {codec.enc_element(z)}")


def cmd_fgroup(p: dict, opts) -> Outcome:
    alpha = codec.dec_symbol(p.get("alpha", "alpha"))
    beta = p.get("beta", "indep")
    if isinstance(beta, dict):
        beta = codec.dec_symbol(beta)
    knobs = {}
    for key, default in (("height", DEFAULT_HEIGHT), ("expo", DEFAULT_EXPO),
                         ("nbound", DEFAULT_NBOUND), ("budget", DEFAULT_BUDGET)):
        knobs[key] = codec._int(p.get(key, default))
    P, report = realize_dispatch(alpha, beta, **knobs)
    rows = report.summary_rows()
    width = max(len(k) for k, _ in rows)
    text = "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)
    status = 0 if report.verdict == "consistent_with_claim" else 2
    full = bool(p.get("full_refutations", False))
    return _ok(dict(codec.enc_report(report, full=full), command="fgroup"), text, status)


HANDLERS: Dict[str, Callable[[dict, object], Outcome]] = {
    "bezout": cmd_bezout, "monic-lemma": cmd_monic_lemma, "unit-power": cmd_unit_power,
    "certify": cmd_certify, "verify": cmd_verify, "member": cmd_member, "invariant": cmd_invariant,
    "density": cmd_density, "riesz": cmd_riesz, "fgroup": cmd_fgroup,
}


def run(command: str, payload: dict, opts=None) -> Outcome:
    """Run one job and map every failure onto the exit-code contract."""
    try:
        if command not in HANDLERS:
            raise MalformedInput(f"unknown command {command!r}")
        if not isinstance(payload, dict):
            raise MalformedInput("payload must be a JSON object")
        out = HANDLERS[command](payload, opts)
        for path, content in out.files:
            codec.write_atomic(path, content)
        return out
    except DimGroupError as exc:
        return Outcome(exc.exit_code, codec.error_payload(exc), f"error [{exc.code}]: {exc}")
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        err = MalformedInput(f"{type(exc).__name__}: {exc}")
        return Outcome(1, codec.error_payload(err), f"error [{err.code}]: {err}")


# ---------------------------------------------------------------------------
# batch

def _batch_one(job) -> dict:
    if not isinstance(job, dict):
        return {"command": None, "exit": 1, "result": codec.error_payload(MalformedInput("job must be an object"))}
    command = job.get("command")
    payload = job.get("inputs", {})
    out_path = job.get("output_path")
    if command == "certify" and out_path and isinstance(payload, dict):
        payload = dict(payload, output_path=out_path)
    out = run(command, payload)
    if out_path and command != "certify" and out.status in (0, 2):
        codec.write_atomic(out_path, codec.dumps(out.result))
    return {"command": command, "exit": out.status, "result": out.result}


def run_batch(manifest, jobs: int = 1) -> Tuple[int, dict]:
    if isinstance(manifest, dict):
        manifest = manifest.get("jobs")
    if not isinstance(manifest, list):
        raise MalformedInput("manifest must be a list of jobs")
    if jobs > 1 and len(manifest) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_batch_one, manifest))
    else:
        results = [_batch_one(j) for j in manifest]
    for i, r in enumerate(results):
        r["index"] = i
    status = max((r["exit"] for r in results), default=0)
    summary = {"schema_version": codec.SCHEMA_VERSION, "kind": "batch_summary", "jobs": results,
               "ok": sum(r["exit"] == 0 for r in results), "failed": sum(r["exit"] != 0 for r in results)}
    return status, summary


# ---------------------------------------------------------------------------
# argument parsing

def _json_arg(value: Optional[str]):
    return None if value is None else codec.load_json(value)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dimgroup", description="Exact invariance and certificate tools for "
                                 "monomial-basis subgroups of R^n.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--input", help="JSON payload (inline, @file or path); flags override its fields")
        sp.add_argument("--output", help="write the JSON result here (a directory for certify)")
        sp.add_argument("--quiet", action="store_true", help="print only the JSON result")
        return sp

    sp = add("bezout", "integer Bezout identity a*psi1 + b*psi2 = m")
    sp.add_argument("--psi1")
    sp.add_argument("--psi2")
    sp = add("monic-lemma", "m*phi1 + psi*phi2 + t^n = 1 for monic psi")
    sp.add_argument("--psi")
    sp.add_argument("--m")
    sp = add("unit-power", "s*r + q^N = 1 with N >= min_N")
    sp.add_argument("--r")
    sp.add_argument("--q")
    sp.add_argument("--min-N", dest="min_N")
    sp = add("certify", "certificates that diag(1, w) is in I(G)")
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--phi")
    sp.add_argument("--assume-irreducible", action="store_true")
    sp = add("verify", "replay a certificate file")
    sp.add_argument("file", nargs="?")
    sp = add("member", "membership of a slot-coefficient element")
    sp.add_argument("--group")
    sp.add_argument("--element")
    sp = add("invariant", "decide G M == G for a monomial matrix M")
    sp.add_argument("--group")
    sp.add_argument("--matrix")
    sp = add("density", "dim short independent members")
    sp.add_argument("--group")
    sp.add_argument("--eps")
    sp = add("riesz", "interpolate g1, g2 <= z <= h1, h2")
    sp.add_argument("--group")
    for k in ("g1", "g2", "h1", "h2"):
        sp.add_argument(f"--{k}")
    sp = add("fgroup", "realization report for diag(alpha^n, beta^n)")
    sp.add_argument("--alpha")
    sp.add_argument("--beta", choices=["indep", "alpha", "inv-alpha", "one"])
    sp.add_argument("--height", type=int)
    sp.add_argument("--expo", type=int)
    sp.add_argument("--nbound", type=int)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--full-refutations", action="store_true")
    sp = sub.add_parser("batch", help="run a manifest of jobs")
    sp.add_argument("--input", required=True, help="manifest: JSON list of {command, inputs, output_path}")
    sp.add_argument("--output", help="summary JSON path")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--quiet", action="store_true")
    return ap


_JSON_FLAGS = {"psi1", "psi2", "psi", "a", "b", "phi", "group", "element", "matrix", "g1", "g2", "h1", "h2"}
_SCALAR_FLAGS = {"m", "r", "q", "min_N", "eps", "height", "expo", "nbound", "budget"}


def _payload(args) -> dict:
    payload = _json_arg(args.input) if getattr(args, "input", None) else {}
    if not isinstance(payload, dict):
        raise MalformedInput("--input must hold a JSON object")
    for key, value in vars(args).items():
        if value is None or key in ("command", "input", "output", "quiet"):
            continue
        if key in _JSON_FLAGS:
            payload[key] = codec.load_json(value)
        elif key in _SCALAR_FLAGS:
            payload[key] = value
        elif key == "alpha":
            payload[key] = codec.load_json(value) if value.lstrip().startswith("{") else value
        elif key == "beta":
            payload[key] = value
        elif key == "file":
            payload["certificate"] = value
        elif key == "full_refutations" and value:
            payload[key] = True
    return payload


def _emit(out: Outcome, args) -> None:
    if not args.quiet:
        print(out.text)
    print(codec.dumps(out.result), end="")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    if args.command == "batch":
        try:
            status, summary = run_batch(codec.load_json(args.input), args.jobs)
        except DimGroupError as exc:
            print(f"error [{exc.code}]: {exc}", file=sys.stderr)
            return exc.exit_code
        text = codec.dumps(summary)
        if args.output:
            codec.write_atomic(args.output, text)
        if not args.quiet:
            for r in summary["jobs"]:
                print(f"job {r['index']}: {r['command']} -> exit {r['exit']}")
        print(text, end="")
        return status
    try:
        payload = _payload(args)
    except DimGroupError as exc:
        out = Outcome(exc.exit_code, codec.error_payload(exc), f"error [{exc.code}]: {exc}")
        _emit(out, args)
        return out.status
    out = run(args.command, payload, args)
    if args.output and args.command != "certify" and out.status in (0, 2):
        codec.write_atomic(args.output, codec.dumps(out.result))
    _emit(out, args)
    return out.status


if __name__ == "__main__":
    sys.exit(main())
