"""Command-line front end.

Every subcommand prints one report (human-readable, or JSON with ``--json``).
Exact values are rational strings.  Exit status: 0 on success or pass, 1 when
a theorem checker or fact check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import field
from .currents import Current, lelong_at, mass, upper_level_set
from .field import GaussianRational, format_rational, to_float, to_fraction
from .geometry import GeometryError, Line, ProjPoint, choose_chart, m_invariant
from .green import (
    GreenFunction,
    PreconditionError as GreenPreconditionError,
    bezout_certificate,
    check_prop21,
    construct_lemma22,
    construct_pencil,
    construct_prop23,
    construct_prop24,
    estimate_gamma,
)
from .theorems import (
    PreconditionError as TheoremPreconditionError,
    check_prop310,
    check_thm11,
    check_thm12,
    check_thm38,
    classify,
    verify_certificates,
)

ALPHA_BANDS = {
    "1.1": ("1/2", "3/5", "2/3", "3/4"),
    "1.2": ("2/5", "9/20"),
}


class InputError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


# parsing -----------------------------------------------------------------------

def _load_json(value: str, what: str):
    try:
        if value == "-":
            return json.load(sys.stdin)
        if value.lstrip()[:1] in ("{", "["):
            return json.loads(value)
        with open(value, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError("json", f"{what}: malformed JSON ({exc})") from exc
    except OSError as exc:
        raise InputError("io", f"{what}: cannot read {value!r} ({exc.strerror})") from exc


def _scalar(x):
    if isinstance(x, bool) or x is None:
        raise InputError("schema", f"not a number: {x!r}")
    if isinstance(x, float):
        if not x.is_integer():
            raise InputError("schema", f"use exact rationals like \"1/3\" instead of the float {x!r}")
        x = int(x)
    try:
        return GaussianRational.coerce(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError("schema", f"bad coordinate {x!r}") from exc


def _point(obj, what="point") -> ProjPoint:
    if not isinstance(obj, list) or len(obj) < 2:
        raise InputError("schema", f"{what} must be a list of at least 2 homogeneous coordinates")
    try:
        return ProjPoint([_scalar(c) for c in obj])
    except GeometryError as exc:
        raise InputError("schema", f"{what}: {exc}") from exc


def _affine(obj, what="point"):
    if not isinstance(obj, list) or not obj:
        raise InputError("schema", f"{what} must be a list of affine coordinates")
    return tuple(_scalar(c) for c in obj)


def _current(value: str) -> Current:
    obj = _load_json(value, "current")
    try:
        return Current.from_json(obj)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError("schema", f"current: {exc}") from exc


def _rational(value: str, what: str) -> Fraction:
    try:
        return to_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError("schema", f"{what}: expected a rational like 2/5, got {value!r}") from exc


# report helpers -----------------------------------------------------------------

def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _approx(p: ProjPoint, digits: int = 12):
    coords = p.affine() if p.is_affine() else p.coords
    out = []
    for c in coords:
        z = complex(to_float(c))
        out.append(f"{z.real:.{digits}g}" if z.imag == 0 else f"{z.real:.{digits}g}{z.imag:+.{digits}g}i")
    return " ".join(out)


def _classification_json(cl):
    out = {
        "shape": cl.shape,
        "truncated": cl.truncated,
        "tolerance_qualified": cl.tolerance_qualified,
        "certificates_verified": verify_certificates(cl),
    }
    for key in ("line", "second_line", "conic", "outlier"):
        v = getattr(cl, key)
        if v is not None:
            out[key] = v.to_json()
    if cl.points:
        out["points"] = [p.to_json() for p in cl.points]
    if cl.evidence:
        out["evidence"] = [p.to_json() for p in cl.evidence]
    return out


def _green_json(g: GreenFunction, args):
    res = {
        "label": g.label,
        "green_function": g.to_json(),
        "pole_weights_verified": g.weights_verified(),
        "growth_upper_bound": g.growth_upper_bound(),
    }
    gamma = estimate_gamma(g, radii=args.radii, directions=args.directions, seed=args.seed)
    res["gamma_estimate"] = f"{gamma:.6f}"
    res["gamma_estimate_digits"] = 6
    certs = []
    if len(g.polys) == 2 and g.num_vars == 2:
        c = bezout_certificate(g.polys[0], g.polys[1], g.pole_points, g.pole_weights)
        certs.append({
            "kind": "bezout",
            "local_bounds": list(c.local_bounds),
            "total": c.total,
            "expected": c.expected,
            "extra_common_zeros": len(g.extra_zeros or []),
            "ok": c.ok,
        })
    return res, certs


# subcommands ----------------------------------------------------------------------

def cmd_mass(args):
    T = _current(args.current)
    return 0, {"mass": format_rational(mass(T))}, [], [], {"current": T.to_json()}


def cmd_lelong(args):
    T = _current(args.current)
    p = _point(_load_json(args.point, "point"))
    if p.dim != T.ambient_dim:
        raise InputError("schema", f"point lives in P^{p.dim}, current in P^{T.ambient_dim}")
    iv = lelong_at(T, p)
    return 0, {"point": p.to_json(), "lelong": iv.to_json()}, [], [], {"current": T.to_json(), "point": p.to_json()}


def cmd_levelset(args):
    T = _current(args.current)
    alpha = _rational(args.alpha, "alpha")
    strict = not args.non_strict
    try:
        ls = upper_level_set(T, alpha, strict=strict)
    except ValueError as exc:
        raise InputError("precondition", str(exc)) from exc
    res = {
        "threshold": format_rational(alpha),
        "strict": strict,
        "curves": [{"component": c.to_json(), "generic_value": format_rational(v)} for c, v in ls.curve_components],
        "points": [
            {"point": ip.point.to_json(), "membership": ip.membership, "lelong": ip.interval.to_json()}
            for ip in ls.isolated_points if ip.membership != "out"
        ],
    }
    if args.dump_points:
        res["dump"] = [_approx(p) for p in ls.points("in")]
    inputs = {"current": T.to_json(), "alpha": format_rational(alpha), "strict": strict}
    return 0, res, [], list(ls.warnings), inputs


def cmd_classify(args):
    T = _current(args.current)
    alpha = _rational(args.alpha, "alpha")
    try:
        cl = classify(T, alpha)
    except (TheoremPreconditionError, ValueError) as exc:
        raise InputError("precondition", str(exc)) from exc
    res = _classification_json(cl)
    certs = [{"point": c.point.to_json(), "carrier": c.carrier.to_json(), "exact": c.exact} for c in cl.certificates]
    if args.dump_points:
        res["dump"] = [_approx(p) for p in cl.level_set.points("in")]
    return 0, res, certs, list(cl.level_set.warnings), {"current": T.to_json(), "alpha": format_rational(alpha)}


def cmd_invariants(args):
    obj = _load_json(args.points, "points")
    if not isinstance(obj, list) or not obj:
        raise InputError("schema", "points must be a nonempty list")
    pts = [ProjPoint.from_affine(_affine(p)) for p in obj] if args.affine else [_point(p) for p in obj]
    if len({p.dim for p in pts}) != 1:
        raise InputError("schema", "points have mixed dimensions")
    res = {"count": len(pts), "m_1": m_invariant(pts, 1)}
    if pts[0].dim == 2:
        res["m_2"] = m_invariant(pts, 2)
    chart = choose_chart(pts)
    res["chart_hyperplane"] = [format_rational(c.re) for c in chart.matrix[-1]]
    return 0, res, [], [], {"points": [p.to_json() for p in pts]}


def cmd_green(args):
    obj = _load_json(args.points, "points")
    if not isinstance(obj, list):
        raise InputError("schema", "points must be a list of affine points")
    pts = [_affine(p) for p in obj]
    inputs = {"construction": args.construction, "points": [[format_rational(c.re) if not c.im else c.to_json() for c in p] for p in pts]}
    try:
        if args.construction == "lemma22":
            g = construct_lemma22(pts)
        elif args.construction == "pencil":
            g = construct_pencil(pts)
        elif args.construction == "prop23":
            g = construct_prop23(pts)
        else:
            if args.q is None:
                raise InputError("schema", "prop24 needs --q")
            q = _affine(_load_json(args.q, "q"))
            inputs["q"] = [format_rational(c.re) for c in q]
            r = construct_prop24(pts, q)
            g = r.green
    except (GreenPreconditionError, GeometryError) as exc:
        raise InputError("precondition", str(exc)) from exc
    res, certs = _green_json(g, args)
    if args.construction == "prop24":
        res["case"] = r.case
        res["subset"] = [[format_rational(c.re) for c in p] for p in r.subset]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(g.to_json(), fh, indent=2, sort_keys=True)
    ok = res["pole_weights_verified"] and all(c["ok"] or c["extra_common_zeros"] for c in certs)
    inputs.update(radii=list(args.radii), directions=args.directions, seed=args.seed)
    return (0 if ok else 1), res, certs, [], inputs


def cmd_example(args):
    from .fixtures import gen_example

    params = {}
    if args.m is not None:
        params["m"] = args.m
    if args.N is not None:
        params["N"] = args.N
    try:
        ex = gen_example(args.id, **params)
    except (ValueError, TypeError) as exc:
        raise InputError("schema", str(exc)) from exc
    res = {
        "id": ex.id,
        "current": ex.current.to_json(),
        "mass": format_rational(mass(ex.current)),
        "points": {k: p.to_json() for k, p in ex.points.items()},
        "lelong": {k: lelong_at(ex.current, p).to_json() for k, p in ex.points.items()},
    }
    code = 0
    if args.check:
        facts = ex.check()
        res["facts"] = [{"fact": name, "holds": ok, "detail": detail} for name, ok, detail in facts]
        code = 0 if all(ok for _, ok, _ in facts) else 1
    return code, res, [], [], {"id": args.id, **{k: v for k, v in params.items()}}


def _theorem_json(r):
    out = {"theorem": r.theorem, "status": r.status, "detail": r.detail}
    if r.offending:
        out["offending"] = [p.to_json() for p in r.offending]
    if isinstance(r.witness, Line):
        out["witness_line"] = r.witness.to_json()
    if r.classification is not None:
        out["classification"] = _classification_json(r.classification)
    return out


def _fuzz(which, count, seed, alpha):
    from .fixtures import random_current, random_prop310_instance, random_thm38_instance

    runs = []
    for i in range(count):
        key = f"{seed}:{i}"
        if which in ("1.1", "1.2"):
            n = 3 if which == "1.1" and i % 2 else 2
            T = random_current(key, n=n, allow_conics=(n == 2))
            check = check_thm11 if which == "1.1" else check_thm12
            for a in ([alpha] if alpha is not None else [to_fraction(s) for s in ALPHA_BANDS[which]]):
                runs.append((key, a, check(T, a)))
        elif which == "3.8":
            T, a, q1, q2 = random_thm38_instance(key)
            runs.append((key, a, check_thm38(T, a, q1, q2)))
        else:
            T, a, triple, L = random_prop310_instance(key)
            runs.append((key, a, check_prop310(T, a, triple, L)))
    return runs


def cmd_verify(args):
    which = args.which
    alpha = _rational(args.alpha, "alpha") if args.alpha is not None else None
    try:
        if args.fuzz is not None:
            if args.seed is None:
                raise InputError("schema", "--fuzz needs an explicit --seed")
            runs = _fuzz(which, args.fuzz, args.seed, alpha)
            statuses = [r.status for _, _, r in runs]
            failures = [{"seed": k, "alpha": format_rational(a), **_theorem_json(r)} for k, a, r in runs if r.status != "pass"]
            res = {
                "which": which,
                "instances": len(runs),
                "passed": statuses.count("pass"),
                "failed": statuses.count("fail"),
                "indeterminate": statuses.count("indeterminate"),
                "failures": failures,
            }
            code = 0 if not failures else 1
            return code, res, [], [], {"which": which, "fuzz": args.fuzz, "seed": args.seed,
                                        "alpha": None if alpha is None else format_rational(alpha)}
        if args.current is None or alpha is None:
            raise InputError("schema", "give either --fuzz N --seed s, or --current and --alpha")
        T = _current(args.current)
        inputs = {"which": which, "current": T.to_json(), "alpha": format_rational(alpha)}
        if which == "1.1":
            r = check_thm11(T, alpha)
        elif which == "1.2":
            r = check_thm12(T, alpha)
        elif which == "3.8":
            if args.q1 is None or args.q2 is None:
                raise InputError("schema", "3.8 needs --q1 and --q2")
            q1, q2 = _point(_load_json(args.q1, "q1")), _point(_load_json(args.q2, "q2"))
            inputs.update(q1=q1.to_json(), q2=q2.to_json())
            r = check_thm38(T, alpha, q1, q2)
        else:
            if args.triple is None or args.line is None:
                raise InputError("schema", "3.10 needs --triple and --line")
            triple = [_point(p) for p in _load_json(args.triple, "triple")]
            span = [_point(p) for p in _load_json(args.line, "line")]
            if len(span) != 2:
                raise InputError("schema", "--line takes two points spanning the line")
            L = Line(*span)
            inputs.update(triple=[p.to_json() for p in triple], line=L.to_json())
            r = check_prop310(T, alpha, triple, L)
    except (TheoremPreconditionError, GeometryError) as exc:
        raise InputError("precondition", str(exc)) from exc
    code = {"pass": 0, "fail": 1, "indeterminate": 1}[r.status]
    return code, _theorem_json(r), [], [], inputs


def cmd_prop21(args):
    T = _current(args.current)
    if args.green is None:
        raise InputError("schema", "prop21 needs --green (a Green function JSON, see `green --out`)")
    try:
        u = GreenFunction.from_json(_load_json(args.green, "green"))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("schema", f"green: {exc}") from exc
    try:
        v = check_prop21(T, u)
    except ValueError as exc:
        raise InputError("schema", str(exc)) from exc
    res = {"lhs": format_rational(v.lhs), "rhs": format_rational(v.rhs), "holds": v.holds, "equality": v.equality}
    return (0 if v.holds else 1), res, [], [], {"current": T.to_json(), "green": u.to_json()}


# parser ---------------------------------------------------------------------------

def _radii(value: str):
    try:
        radii = [float(x) for x in value.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError("radii must be comma-separated numbers") from exc
    if len(radii) < 2 or any(b <= a for a, b in zip(radii, radii[1:])) or radii[0] <= 0:
        raise argparse.ArgumentTypeError("need at least two increasing positive radii")
    return radii


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--precision-bits", type=int, default=256, help="working precision of numeric fallbacks")

    parser = argparse.ArgumentParser(prog="lelong", description="Lelong numbers of divisor currents on P^n.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mass", parents=[common], help="mass of a current")
    p.add_argument("--current", required=True, help="current JSON (file, '-' or inline)")
    p.set_defaults(func=cmd_mass)

    p = sub.add_parser("lelong", parents=[common], help="Lelong number interval at a point")
    p.add_argument("--current", required=True)
    p.add_argument("--point", required=True, help='homogeneous coordinates, e.g. "[0,0,1]"')
    p.set_defaults(func=cmd_lelong)

    p = sub.add_parser("levelset", parents=[common], help="upper level set V_alpha (or E_alpha)")
    p.add_argument("--current", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--non-strict", action="store_true", help="use nu >= alpha (E_alpha)")
    p.add_argument("--dump-points", action="store_true", help="also emit approximate coordinates")
    p.set_defaults(func=cmd_levelset)

    p = sub.add_parser("classify", parents=[common], help="shape of V_alpha")
    p.add_argument("--current", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--dump-points", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("invariants", parents=[common], help="m_1, m_2 and an affine chart of a point set")
    p.add_argument("--points", required=True, help="JSON list of points")
    p.add_argument("--affine", action="store_true", help="points are affine coordinates")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("green", parents=[common], help="construct a Green function")
    p.add_argument("--construction", required=True, choices=["lemma22", "pencil", "prop23", "prop24"])
    p.add_argument("--points", required=True, help="JSON list of affine points")
    p.add_argument("--q", help="extra affine point for prop24")
    p.add_argument("--radii", type=_radii, default=[1e3, 1e4, 1e5, 1e6])
    p.add_argument("--directions", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the Green function JSON here")
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("example", parents=[common], help="built-in example currents")
    p.add_argument("--id", required=True, choices=["3.2", "3.3", "3.4", "3.5", "3.6", "3.7", "3.9"])
    p.add_argument("--m", type=int, help="number of points on the base line (3.5)")
    p.add_argument("--N", type=int, help="truncation index (3.7)")
    p.add_argument("--check", action="store_true", help="verify the example's stated facts")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("verify-theorem", parents=[common], help="run a theorem checker")
    p.add_argument("--which", required=True, choices=["1.1", "1.2", "3.8", "3.10"])
    p.add_argument("--fuzz", type=int, help="number of random instances")
    p.add_argument("--seed", type=int)
    p.add_argument("--current")
    p.add_argument("--alpha")
    p.add_argument("--q1")
    p.add_argument("--q2")
    p.add_argument("--triple", help="JSON list of three points on the line")
    p.add_argument("--line", help="JSON list of two points spanning the line")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("prop21", parents=[common], help="check sum w_j nu(T, p_j) <= gamma_u ||T||")
    p.add_argument("--current", required=True)
    p.add_argument("--green", help="Green function JSON")
    p.set_defaults(func=cmd_prop21)
    return parser


def _compact(obj):
    """Human view: Gaussian rationals as short strings, coordinate lists inline."""
    if isinstance(obj, dict):
        if set(obj) == {"re", "im"}:
            return str(GaussianRational.from_json(obj))
        return {k: _compact(v) for k, v in obj.items()}
    if isinstance(obj, list):
        items = [_compact(v) for v in obj]
        if items and all(isinstance(v, str) for v in items) and all(isinstance(v, dict) and set(v) == {"re", "im"} for v in obj):
            return "[" + " : ".join(items) + "]"
        return items
    return obj


def _render(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v) if not isinstance(v, str) else v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                sub = _render(v, indent + 1)
                lines.append(f"{pad}- {sub[0].strip()}")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {v if isinstance(v, str) else json.dumps(v)}")
    return lines


def run(argv=None) -> tuple[int, dict]:
    """Parse ``argv``, dispatch, and return ``(exit_code, report)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), {}
    report = {"command": args.command, "argv": argv}
    try:
        field.set_precision(args.precision_bits)
        code, results, certs, warnings, inputs = args.func(args)
    except InputError as exc:
        report.update(status="error", error={"kind": exc.kind, "message": str(exc)})
        return 2, report
    except ValueError as exc:
        report.update(status="error", error={"kind": "input", "message": str(exc)})
        return 2, report
    report["inputs"] = {"sha256": _digest(inputs), **inputs}
    report["results"] = results
    report["certificates"] = certs
    report["warnings"] = warnings
    report["status"] = {0: "ok", 1: "fail"}[code]
    return code, report


def main(argv=None) -> int:
    code, report = run(argv)
    if not report:
        return code
    as_json = "--json" in (report.get("argv") or [])
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        view = {k: v for k, v in report.items() if k not in ("inputs", "argv")}
        if "inputs" in report:
            view["inputs_sha256"] = report["inputs"]["sha256"]
        print("\n".join(_render(_compact(view))))
    if code == 2 and "error" in report:
        print(f"error[{report['error']['kind']}]: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
