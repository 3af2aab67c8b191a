"""Command-line front end.

JSON goes to stdout and a short prose report to stderr. Every object printed
is re-verified through the library first.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import jsonschema

from .bilinear import BilinearSolution, InvalidSeed, NonSquareDeterminant, bilinear_general, find_seed
from .exact import as_rational, format_rational, sqrt_exact
from .pair_solver import (
    AnisotropicMember,
    NotARoot,
    NotASquare,
    SolutionDescription,
    solve_pair,
)
from .poly import MPoly
from .quadform import QuadForm4, pencil
from .quartic import (
    DegenerateDenominator,
    EqualT,
    NotOnCurve,
    QuarticCurve,
    QuarticPoint,
    ZeroY,
    derive_from_one,
    derive_from_two,
    grow_orbit,
    reduce_general,
    search_points,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_SCHEMA = 2
EXIT_NONSQUARE = 3
EXIT_SEED = 4
EXIT_EMPTY = 5
EXIT_DEGENERATE = 6

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*-?\d+)?\s*$"},
    ]
}
_FORM = {
    "oneOf": [
        {"type": "string", "minLength": 1},
        {"type": "object", "additionalProperties": _RATIONAL, "minProperties": 1},
    ]
}
_POINT = {
    "type": "object",
    "properties": {"t": _RATIONAL, "y": _RATIONAL},
    "required": ["t", "y"],
    "additionalProperties": False,
}
_OPTIONS = {
    "type": "object",
    "properties": {
        "height": {"type": "integer", "minimum": 1},
        "depth": {"type": "integer", "minimum": 0},
        "jobs": {"type": "integer", "minimum": 1},
        "xi": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
        "seed": {"type": "array", "items": _RATIONAL, "minItems": 4, "maxItems": 4},
    },
    "additionalProperties": False,
}

SCHEMA = {
    "type": "object",
    "required": ["kind", "payload"],
    "properties": {"kind": {"enum": ["form", "pair", "quartic"]}, "payload": {"type": "object"}, "options": _OPTIONS},
    "additionalProperties": False,
    "allOf": [
        {
            "if": {"properties": {"kind": {"const": "form"}}},
            "then": {"properties": {"payload": {
                "type": "object",
                "required": ["form"],
                "properties": {
                    "form": _FORM,
                    "solution": {"type": "array", "items": {"type": "string"}, "minItems": 4, "maxItems": 4},
                },
                "additionalProperties": False,
            }}},
        },
        {
            "if": {"properties": {"kind": {"const": "pair"}}},
            "then": {"properties": {"payload": {
                "type": "object",
                "required": ["Q1", "Q2"],
                "properties": {
                    "Q1": _FORM,
                    "Q2": _FORM,
                    "solution": {"type": "array", "items": {"type": "string"}, "minItems": 4, "maxItems": 4},
                },
                "additionalProperties": False,
            }}},
        },
        {
            "if": {"properties": {"kind": {"const": "quartic"}}},
            "then": {"properties": {"payload": {
                "type": "object",
                "required": ["curve"],
                "properties": {
                    "curve": {"type": "array", "items": _RATIONAL, "minItems": 5, "maxItems": 5},
                    "points": {"type": "array", "items": _POINT},
                    "base": _POINT,
                },
                "additionalProperties": False,
            }}},
        },
    ],
}


class SchemaError(ValueError):
    pass


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _rat(x) -> Fraction:
    if isinstance(x, str):
        x = x.replace(" ", "")
    return as_rational(x)


def _form(spec) -> QuadForm4:
    if isinstance(spec, str):
        return QuadForm4.parse(spec)
    return QuadForm4.from_coeffs({k: _rat(v) for k, v in spec.items()})


def _point(obj) -> QuarticPoint:
    return QuarticPoint(_rat(obj["t"]), _rat(obj["y"]))


def _int_list(text: str, n: int, flag: str) -> List[int]:
    parts = [p for p in re.split(r"[,\s]+", text.strip().strip("()[]")) if p]
    if len(parts) != n:
        raise SchemaError(f"{flag} expects {n} comma-separated integers")
    try:
        return [int(p) for p in parts]
    except ValueError as err:
        raise SchemaError(f"{flag}: {err}") from None


def _point_list(text: str, flag: str) -> List[QuarticPoint]:
    found = re.findall(r"\(([^()]*)\)", text)
    if not found:
        found = [text]
    out = []
    for chunk in found:
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != 2:
            raise SchemaError(f"{flag} expects points like (t,y)")
        try:
            out.append(QuarticPoint(_rat(parts[0]), _rat(parts[1])))
        except (ValueError, ZeroDivisionError) as err:
            raise SchemaError(f"{flag}: {err}") from None
    return out


def load_problem(path: str) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise SchemaError(f"cannot read problem file: {err}") from None
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as err:
        raise SchemaError(f"schema violation: {err.message}") from None
    return data


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _r(q) -> Any:
    return format_rational(as_rational(q))


def _matrix(M) -> List[List[Any]]:
    return [[_r(x) for x in row] for row in M]


def _family_json(fam) -> Dict[str, Any]:
    return {"degree": fam.degree, "forms": [str(F) for F in fam.forms]}


def _description_json(desc: SolutionDescription) -> Dict[str, Any]:
    cc = desc.curve_condition
    return {
        "status": desc.status,
        "families": [_family_json(f) for f in desc.families],
        "points": [list(p) for p in desc.points],
        "curve_condition": None if cc is None else {
            "quartic": [_r(c) for c in cc.quartic],
            "map": [str(F) for F in cc.map],
            "note": cc.note,
        },
        "certificate": desc.certificate,
        "notes": list(desc.notes),
    }


def _qpoint(P: QuarticPoint) -> Dict[str, Any]:
    return {"t": _r(P.t), "y": _r(P.y)}


def _emit(obj: Dict[str, Any], fmt: str, prose: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
        sys.stderr.write(prose.rstrip() + "\n")
    else:
        sys.stdout.write(prose.rstrip() + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _need(data, kind: str):
    if data["kind"] != kind:
        raise SchemaError(f"this command needs kind={kind!r}, got {data['kind']!r}")


def cmd_diag(data, args) -> int:
    _need(data, "form")
    Q = _form(data["payload"]["form"])
    D = Q.diagonalize()
    det = Q.det()
    root = sqrt_exact(det)
    square = det != 0 and root is not None
    out = {
        "form": str(Q),
        "diag": [_r(a) for a in D.diag],
        "P": _matrix(D.P),
        "det": _r(det),
        "rank": D.rank,
        "det_is_nonzero_square": square,
    }
    prose = f"diagonal {tuple(str(a) for a in D.diag)}, rank {D.rank}, det {det}" + (
        f" = {root}^2" if square else " (not a nonzero square)")
    _emit(out, args.format, prose)
    return EXIT_OK


def _seed_from(data, args) -> Optional[List[Fraction]]:
    if args.seed:
        return [Fraction(x) for x in _int_list(args.seed, 4, "--seed")]
    seed = data.get("options", {}).get("seed")
    return [_rat(x) for x in seed] if seed else None


def cmd_bilinear(data, args) -> int:
    _need(data, "form")
    Q = _form(data["payload"]["form"])
    seed = _seed_from(data, args)
    try:
        if seed is None:
            det = Q.det()
            if det == 0 or sqrt_exact(det) is None:
                raise NonSquareDeterminant(det)
            seed = find_seed(Q)
            if seed is None:
                _emit({"form": str(Q), "error": "no rational zero", "det": _r(det)}, args.format,
                      "the form has square determinant but no nontrivial rational zero")
                return EXIT_SEED
        sol = bilinear_general(Q, seed)
    except NonSquareDeterminant as err:
        _emit({"form": str(Q), "error": "non-square determinant", "det": _r(err.det)}, args.format, str(err))
        return EXIT_NONSQUARE
    except InvalidSeed as err:
        _emit({"form": str(Q), "error": str(err)}, args.format, f"seeding failed: {err}")
        return EXIT_SEED
    ok = sol.verify(Q)
    out = {
        "form": str(Q),
        "seed": list(sol.source.get("seed", ())),
        "solution": [str(F) for F in sol.forms],
        "bilinear": sol.is_bilinear(),
        "verified": ok,
    }
    prose = "bilinear solution (parameters p, q, r, s):\n" + str(sol) + ("\nverified" if ok else "\nFAILED")
    _emit(out, args.format, prose)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _opt(args, data, name, default):
    val = getattr(args, name, None)
    if val is not None:
        return val
    return data.get("options", {}).get(name, default)


def cmd_pair(data, args) -> int:
    _need(data, "pair")
    Q1 = _form(data["payload"]["Q1"])
    Q2 = _form(data["payload"]["Q2"])
    height = _opt(args, data, "height", 50)
    jobs = _opt(args, data, "jobs", 1)
    xi = _int_list(args.xi, 2, "--xi") if args.xi else data.get("options", {}).get("xi")
    f = pencil(Q1, Q2).f
    try:
        report = solve_pair(Q1, Q2, height=height, xi=xi, jobs=jobs)
    except (NotASquare, NotARoot) as err:
        raise SchemaError(f"--xi: {err}") from None
    v = report.verdict
    desc = report.description
    if desc is not None and not desc.verify(Q1, Q2):  # pragma: no cover - soundness guard
        raise ArithmeticError("solution description failed verification")
    out = {
        "Q1": str(Q1),
        "Q2": str(Q2),
        "pencil": [_r(c) for c in f.coeffs],
        "verdict": {
            "tag": v.tag,
            "witness": None if v.witness is None else [v.witness[0], v.witness[1], _r(v.witness[2])],
            "bound": v.bound,
            "certificate": v.certificate,
        },
        "route": report.route,
        "pencil_point": None if report.choice is None else list(report.choice),
        "solution": None if desc is None else _description_json(desc),
    }
    lines = [f"pencil determinant f = {f}", f"verdict: {v.tag}" + (f" ({v.certificate})" if v.certificate else "")]
    if desc is not None:
        lines.append(f"status: {desc.status} via {report.route} route at {report.choice}")
        for fam in desc.families:
            lines.append(f"  family of degree {fam.degree}: ({fam})")
        for p in desc.points:
            lines.append(f"  point {p}")
        if desc.curve_condition is not None:
            cc = desc.curve_condition
            lines.append(f"  curve eta^2 = {[str(c) for c in cc.quartic]} with map ({', '.join(map(str, cc.map))})")
        if desc.certificate:
            lines.append(f"  certificate: {desc.certificate}")
    _emit(out, args.format, "\n".join(lines))
    empty = v.tag == "ProvedEmpty" or (desc is not None and desc.status == "ProvedEmpty")
    return EXIT_EMPTY if empty else EXIT_OK


def _curve_and_points(data, args):
    payload = data["payload"]
    C = QuarticCurve.from_coeffs([_rat(c) for c in payload["curve"]])
    pts = [_point(p) for p in payload.get("points", [])]
    if getattr(args, "seeds", None):
        pts = _point_list(args.seeds, "--seeds")
    for P in pts:
        if not C.contains(P):
            raise SchemaError(f"point ({P.t}, {P.y}) is not on the curve")
    return C, pts


def cmd_quartic(data, args) -> int:
    _need(data, "quartic")
    C, pts = _curve_and_points(data, args)
    sub = args.action
    if sub == "search":
        height = _opt(args, data, "height", 50)
        found = search_points(C, height)
        out = {"curve": [_r(c) for c in C.coeffs], "height": height, "points": [_qpoint(P) for P in found]}
        _emit(out, args.format, f"{len(found)} points with height <= {height}")
        return EXIT_OK
    if sub in ("derive", "orbit") and not C.is_monic:
        raise SchemaError("derivation needs a monic curve (a0 = 1); use 'quartic reduce' first")
    if sub == "derive":
        results, failures = [], []
        for P in pts:
            try:
                results.append({"from": [_qpoint(P)], "point": _qpoint(derive_from_one(C, P))})
            except (ZeroY, DegenerateDenominator) as err:
                failures.append({"from": [_qpoint(P)], "reason": str(err)})
        for i, P in enumerate(pts):
            for Q in pts[i + 1:]:
                try:
                    results.append({"from": [_qpoint(P), _qpoint(Q)], "point": _qpoint(derive_from_two(C, P, Q))})
                except (EqualT, DegenerateDenominator) as err:
                    failures.append({"from": [_qpoint(P), _qpoint(Q)], "reason": str(err)})
        out = {"curve": [_r(c) for c in C.coeffs], "derived": results, "skipped": failures}
        prose = "\n".join(f"t = {r['point']['t']}, y = {r['point']['y']}" for r in results) or "no derivation applied"
        _emit(out, args.format, prose)
        return EXIT_OK if results or not (pts and failures) else EXIT_DEGENERATE
    if sub == "orbit":
        depth = _opt(args, data, "depth", 2)
        orbit = grow_orbit(C, pts, depth)
        out = {"curve": [_r(c) for c in C.coeffs], "depth": depth, "points": [_qpoint(P) for P in orbit]}
        _emit(out, args.format, f"{len(orbit)} points after {depth} rounds")
        return EXIT_OK
    # reduce
    if args.point:
        base = _point_list(args.point, "--point")[0]
    elif "base" in data["payload"]:
        base = _point(data["payload"]["base"])
    else:
        raise SchemaError("reduce needs a base point (--point or payload.base)")
    mapped_src = _point_list(args.map, "--map") if args.map else pts
    try:
        red = reduce_general(C, base)
    except ZeroY as err:
        raise SchemaError(str(err)) from None
    except NotOnCurve as err:
        raise SchemaError(str(err)) from None
    mapped, derived, failures = [], [], []
    for P in mapped_src:
        try:
            R = red.forward(P)
        except (ValueError, NotOnCurve) as err:
            failures.append({"from": [_qpoint(P)], "reason": str(err)})
            continue
        mapped.append({"from": _qpoint(P), "to": _qpoint(R)})
        for S in (R, R.negate()) if R.y else (R,):
            try:
                D = derive_from_one(red.monic, S)
                back = red.inverse(D)
            except (ZeroY, DegenerateDenominator, ValueError) as err:
                failures.append({"from": [_qpoint(S)], "reason": str(err)})
                continue
            if not C.contains(back):  # pragma: no cover
                raise ArithmeticError("back-mapped point is off the curve")
            derived.append({"monic": _qpoint(D), "original": _qpoint(back)})
    out = {
        "curve": [_r(c) for c in C.coeffs],
        "base": _qpoint(base),
        "monic": [_r(c) for c in red.monic.coeffs],
        "mapped": mapped,
        "derived": derived,
        "skipped": failures,
    }
    prose = f"monic model: {red.monic}\n" + "\n".join(f"new point t = {d['original']['t']}" for d in derived)
    _emit(out, args.format, prose)
    return EXIT_OK if derived or not mapped_src else EXIT_DEGENERATE


def _parse_solution(strings: Sequence[str]) -> List[MPoly]:
    try:
        return [MPoly.parse(s) for s in strings]
    except (ValueError, SyntaxError) as err:
        raise SchemaError(f"cannot parse solution: {err}") from None


def cmd_verify(data, args) -> int:
    kind = data["kind"]
    payload = data["payload"]
    if kind == "quartic":
        C, pts = _curve_and_points(data, args)  # raises on any point off the curve
        _emit({"curve": [_r(c) for c in C.coeffs], "points": [_qpoint(P) for P in pts], "verified": True},
              args.format, f"{len(pts)} points verified")
        return EXIT_OK
    if "solution" not in payload:
        raise SchemaError("verify needs payload.solution (four polynomials)")
    sol = _parse_solution(payload["solution"])
    forms = [_form(payload["form"])] if kind == "form" else [_form(payload["Q1"]), _form(payload["Q2"])]
    residues = [Q.substitute(sol) for Q in forms]
    ok = all(R.is_zero() for R in residues)
    out = {"solution": [str(F) for F in sol], "residues": [str(R) for R in residues], "verified": ok}
    _emit(out, args.format, "verified: substitution is identically zero" if ok else "NOT a solution")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="problem file (JSON)")
    common.add_argument("--height", type=int, default=None, help="search height bound (default 50)")
    common.add_argument("--depth", type=int, default=None, help="orbit depth (default 2)")
    common.add_argument("--seed", help='known zero "x1,x2,x3,x4"')
    common.add_argument("--xi", help='pencil point "a,b"')
    common.add_argument("--jobs", type=int, default=None, help="worker processes for searches")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="diophant", description="Quaternary quadratic forms, pairs and quartic curves.")
    subs = parser.add_subparsers(dest="command", required=True)
    subs.add_parser("diag", parents=[common], help="diagonalize a form")
    subs.add_parser("bilinear", parents=[common], help="bilinear solution of a form")
    subs.add_parser("pair", parents=[common], help="solve a pair of forms")
    q = subs.add_parser("quartic", help="rational points on y^2 = quartic")
    qsub = q.add_subparsers(dest="action", required=True)
    for name in ("search", "derive", "orbit", "reduce"):
        sp = qsub.add_parser(name, parents=[common])
        sp.add_argument("--seeds", help='points "(t,y),(t,y)"')
        if name == "reduce":
            sp.add_argument("--point", help='base point "(t,y)"')
            sp.add_argument("--map", help='points to carry over "(t,y),..."')
    subs.add_parser("verify", parents=[common], help="check a proposed solution")
    return parser


_COMMANDS = {"diag": cmd_diag, "bilinear": cmd_bilinear, "pair": cmd_pair, "quartic": cmd_quartic, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("height", "jobs"):
        val = getattr(args, name, None)
        if val is not None and val < 1:
            parser.error(f"--{name} must be positive")
    try:
        data = load_problem(args.input)
        return _COMMANDS[args.command](data, args)
    except (SchemaError, ValueError, ZeroDivisionError, SyntaxError) as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_SCHEMA


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
