"""Command line front end: ``piso-lab <command> ...``.

Exit codes: 0 success / all checks pass, 1 a check failed or a domain error,
2 usage error (bad flags, malformed window spec or element).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .bp import BpFunction, bp_sup_norm, norm_window, qa_decomposition
from .covariance import (
    AUDIT_KINDS,
    check_covariant_pair,
    check_halmos,
    check_left_nica,
    check_piso_rep,
    check_right_nica,
    criterion_equivalence_audit,
    windows,
)
from .crossed import cp_multiply, element_from_json
from .operators import build_representation
from .padic import (
    BetaContext,
    DomainError,
    GroupAlgebraElement,
    OdometerPoint,
    bd_invariants,
    beta_apply,
    odometer_orbit,
)
from .semigroups import DescriptorError, WindowSpecError, parse_window_spec, sigma

CHECKS = ("piso_rep", "right_nica", "left_nica", "covariant_pair", "halmos") + tuple(f"audit_{k}" for k in AUDIT_KINDS)
REPS = ("canonical_W", "canonical_S", "compressed", "degenerate_free")


class UsageError(Exception):
    pass


def _threads():
    raw = os.environ.get("PISO_LAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"PISO_LAB_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("PISO_LAB_THREADS must be >= 1")
    return n


def _elements(D, text):
    sep = ";" if ";" in text else ","
    try:
        return [D.check(D.parse(t)) for t in text.split(sep) if t.strip()]
    except DescriptorError as exc:
        raise UsageError(str(exc)) from None


def _window(text):
    try:
        return parse_window_spec(text)
    except WindowSpecError as exc:
        raise UsageError(f"malformed window spec: {exc}") from None


# -- commands: each returns (result, exit_code, csv_rows) ---------------------

def cmd_lcm(args):
    ws = _window(args.semigroup)
    D = ws.descriptor
    x, y = _elements(D, args.x)[0], _elements(D, args.y)[0]
    fmt = lambda z: None if z is None else D.format(z)  # noqa: E731
    res = {"x": D.format(x), "y": D.format(y), "left_lcm": fmt(D.left_lcm(x, y)),
           "right_lcm": fmt(D.right_lcm(x, y))}
    return res, 0, [["x", "y", "left_lcm", "right_lcm"], [res["x"], res["y"], res["left_lcm"] or "", res["right_lcm"] or ""]]


def cmd_sigma(args):
    D = _window(args.semigroup).descriptor
    F = _elements(D, args.set)
    if not F:
        raise UsageError("--set must name at least one element")
    s = sigma(D, F)
    res = {"F": [D.format(x) for x in F], "sigma": None if s is None else D.format(s)}
    return res, 0, [["F", "sigma"], [" ".join(res["F"]), res["sigma"] or ""]]


def _run_checks(rep, names, elements, basis):
    D = rep.descriptor
    reports = []
    for name in names:
        if name == "piso_rep":
            reports.append(check_piso_rep(rep, elements, basis))
        elif name == "right_nica":
            reports.append(check_right_nica(rep, elements, basis))
        elif name == "left_nica":
            reports.append(check_left_nica(rep, elements, basis))
        elif name == "halmos":
            reports.append(check_halmos(rep, elements, basis))
        elif name == "covariant_pair":
            gens = [BpFunction.indicator(D, u) for u in elements]
            reports.append(check_covariant_pair(rep, elements, gens, basis))
        else:
            reports.append(criterion_equivalence_audit(rep, name[len("audit_"):], elements, basis))
    return reports


def cmd_check(args):
    ws = _window(args.semigroup)
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    bad = [c for c in names if c not in CHECKS]
    if bad:
        raise UsageError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
    D = ws.descriptor
    try:
        rep = build_representation(D, args.rep)
    except (ValueError, DescriptorError) as exc:
        raise UsageError(str(exc)) from None
    elements, basis = windows(ws, rep)
    try:
        reports = _run_checks(rep, names, elements, basis)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    data = [r.to_json() for r in reports]
    rows = [["check", "semigroup", "status", "elements", "basis_point", "lhs", "rhs"]]
    for r in data:
        if not r["witnesses"]:
            rows.append([r["check"], r["semigroup"], r["status"], "", "", "", ""])
        for w in r["witnesses"]:
            rows.append([r["check"], r["semigroup"], r["status"], " ".join(w["elements"]),
                         w["basis_point"], w["lhs"], w["rhs"]])
    code = 0 if all(r.passed for r in reports) else 1
    return {"representation": rep.kind, "reports": data}, code, rows


def cmd_qa(args):
    D = _window(args.semigroup).descriptor
    F = _elements(D, args.set)
    report = qa_decomposition(D, F)
    res = report.to_json()
    res["sum_is_unit"] = report.total() == BpFunction.unit(D)
    res["orthogonal"] = report.orthogonal()
    rows = [["A", "sigmaA", "nonzero", "Q"]]
    for e in res["entries"]:
        rows.append([" ".join(e["A"]), e["sigmaA"] or "", str(e["nonzero"]).lower(),
                     " ".join(f"{t['coeff']}*1_{t['u']}" for t in e["Q"])])
    return res, 0, rows


def cmd_norm(args):
    ws = _window(args.semigroup)
    D = ws.descriptor
    F = _elements(D, args.set)
    coeffs = [Fraction(c) for c in args.coeffs.split(",")]
    if len(coeffs) != len(F):
        raise UsageError("--coeffs must match --set in length")
    f = BpFunction(D, dict(zip(F, coeffs)))
    window = ws.elements() if args.window_from_spec else norm_window(D, list(f.terms) or [D.identity])
    formula = bp_sup_norm(f, "formula")
    windowed = bp_sup_norm(f, "window", window)
    res = {"f": f.to_json(), "formula": str(formula), "window": str(windowed), "agree": formula == windowed}
    return res, 0, [["formula", "window", "agree"], [res["formula"], res["window"], str(res["agree"]).lower()]]


def cmd_cp_mul(args):
    D = _window(args.semigroup).descriptor
    try:
        u = element_from_json(D, json.loads(args.left), args.system)
        v = element_from_json(D, json.loads(args.right), args.system)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"bad monomial JSON: {exc}") from None
    prod = cp_multiply(u, v)
    res = {"left": u.to_json(), "right": v.to_json(), "product": prod.to_json(), "product_str": repr(prod)}
    return res, 0, [["product"], [repr(prod)]]


def cmd_bd(args):
    inv = bd_invariants(args.p, args.q).to_json()
    cols = ["p", "q", "ord", "L", "count", "supernatural"]
    return inv, 0, [cols, [str(inv[c]) for c in cols]]


def cmd_odometer(args):
    if args.start:
        try:
            digits = tuple(int(t) for t in args.start.split(","))
        except ValueError:
            raise UsageError(f"bad --start {args.start!r}") from None
        if len(digits) != args.depth + 1:
            raise UsageError(f"--start needs depth+1 = {args.depth + 1} digits")
        start = OdometerPoint(digits, args.d, args.p)
    else:
        start = OdometerPoint.zero(args.d, args.p, args.depth)
    orbit = odometer_orbit(start, args.steps)
    res = {"d": args.d, "p": args.p, "depth": args.depth, "orbit": [list(pt.digits) for pt in orbit]}
    rows = [["step", "digits"]] + [[str(i), ",".join(map(str, pt.digits))] for i, pt in enumerate(orbit)]
    return res, 0, rows


def cmd_beta(args):
    ctx = BetaContext(args.p, args.q, args.k, args.l)
    elem = GroupAlgebraElement.u(ctx.M, args.r)
    out = beta_apply(ctx, (args.m, args.n), elem)
    res = {"M": ctx.M, "m": args.m, "n": args.n, "r": args.r, "image": out.to_json()}
    rows = [["s", "coeff"]] + [[k, v] for k, v in res["image"].items()]
    return res, 0, rows


COMMANDS = {
    "lcm": cmd_lcm, "sigma": cmd_sigma, "check": cmd_check, "qa": cmd_qa, "norm": cmd_norm,
    "cp-mul": cmd_cp_mul, "bd": cmd_bd, "odometer": cmd_odometer, "beta": cmd_beta,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="piso-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"piso-lab {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="report path (stdout if omitted)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lcm", parents=[common])
    p.add_argument("--semigroup", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = sub.add_parser("sigma", parents=[common])
    p.add_argument("--semigroup", required=True)
    p.add_argument("--set", required=True)

    p = sub.add_parser("check", parents=[common])
    p.add_argument("--semigroup", required=True)
    p.add_argument("--rep", choices=REPS, default="canonical_W")
    p.add_argument("--checks", default="piso_rep,right_nica,left_nica")

    p = sub.add_parser("qa", parents=[common])
    p.add_argument("--semigroup", required=True)
    p.add_argument("--set", required=True)

    p = sub.add_parser("norm", parents=[common])
    p.add_argument("--semigroup", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--coeffs", required=True)
    p.add_argument("--window-from-spec", action="store_true",
                   help="evaluate on the whole window instead of the σA points")

    p = sub.add_parser("cp-mul", parents=[common])
    p.add_argument("--semigroup", required=True)
    p.add_argument("--left", required=True, help="JSON list of monomials")
    p.add_argument("--right", required=True, help="JSON list of monomials")
    p.add_argument("--system", choices=("bp", "trivial"), default="bp")

    p = sub.add_parser("bd", parents=[common])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("odometer", parents=[common])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--start")

    p = sub.add_parser("beta", parents=[common])
    for flag in ("p", "q", "k", "l", "m", "n"):
        p.add_argument(f"--{flag}", type=int, required=True)
    p.add_argument("--r", type=int, default=0)
    return parser


def emit_report(command, config, result, rows, fmt="json", out=None):
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        text = buf.getvalue()
    else:
        doc = {"tool": "piso-lab", "version": __version__, "command": command,
               "config": config, "result": result}
        text = json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("out",)}
    try:
        config["threads"] = _threads()
        result, code, rows = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"piso-lab: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ArithmeticError, ValueError) as exc:
        print(f"piso-lab: {exc}", file=sys.stderr)
        return 1
    try:
        emit_report(args.command, config, result, rows, args.format, args.out)
    except OSError as exc:
        print(f"piso-lab: cannot write report: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
