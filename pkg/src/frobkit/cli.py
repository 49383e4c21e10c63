"""Command-line entry point; every command prints a JSON report."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import dgbv, germs, mc_frobenius, qc_potential, spectrum, suite
from .an_saito import (AnChart, NonTameError, VerificationError, critical_data, direct_sum_verify, euler_checks,
                       flat_coordinates, germ_from_chart, verify_special_point)
from .graded_core import DEFAULT_TOL, RootFindingError, fraction_str

SCHEMA = "frobkit.cli/1"


class CommandError(Exception):
    pass


def _plain(x):
    if isinstance(x, germs.GermMatch):
        return {"isomorphic": x.isomorphic, "permutation": _plain(x.permutation), "max_dev": _plain(x.max_dev)}
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        z = complex(x)
        return [z.real, z.imag]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, germs.SemisimpleGerm):
        return germs.germ_to_dict(x)
    return x


def _emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    report = dict(report)
    report.setdefault("schema", SCHEMA)
    data = _plain(report)
    if fmt == "text":
        for k in sorted(data):
            out.write(f"{k}: {json.dumps(data[k], sort_keys=True)}\n")
    else:
        out.write(json.dumps(data, sort_keys=True, indent=2) + "\n")


def _ints(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise CommandError(f"expected comma-separated integers, got {text!r}") from e


def _complexes(text: str) -> List[complex]:
    try:
        return [complex(x.strip().replace(" ", "")) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise CommandError(f"expected comma-separated numbers, got {text!r}") from e


def _chart(n: int, coeffs: str) -> AnChart:
    try:
        return AnChart(n, tuple(_complexes(coeffs)))
    except ValueError as e:
        raise CommandError(str(e)) from e


# ---------------------------------------------------------------------------
# commands


def cmd_spectrum(args) -> dict:
    ns = _ints(args.an)
    if not ns:
        raise CommandError("--an needs at least one n")
    rep = spectrum.spectrum_report(ns)
    if args.bruteforce:
        rep["betti_bruteforce"] = spectrum.betti_bruteforce(ns)
        rep["paths_agree"] = rep["betti_bruteforce"] == rep["betti"]
    ok = rep.get("paths_agree", True) and (rep["integral"] or not args.require_integral)
    rep["pass"] = bool(ok)
    return rep


def cmd_an(args) -> dict:
    chart = _chart(args.n, args.coeffs)
    cd = critical_data(chart, args.tol)
    rep = {"n": chart.n, "coeffs": list(chart.coeffs), "tame": cd.tame, "critical_points": list(cd.roots)}
    ok = True
    if args.special:
        if not cd.tame:
            raise NonTameError("chart is not tame")
        rep["germ"] = germ_from_chart(chart, args.tol)
    if args.flat:
        rep["flat_coordinates"] = list(flat_coordinates(chart))
    if args.euler:
        eu = euler_checks(chart)
        rep["euler"] = eu
        ok = ok and eu["pass"]
    if args.verify_closed_form:
        if chart.n < 2 or any(abs(c) > 0 for c in chart.coeffs[: chart.n - 2]):
            raise CommandError("closed forms need a_1 = ... = a_(n-2) = 0 and n >= 2")
        vr = verify_special_point(chart.n, chart.a(chart.n - 1), chart.a(chart.n), tol=args.tol)
        rep["closed_form"] = vr
        ok = ok and vr["pass"]
    rep["pass"] = bool(ok)
    return rep


def cmd_germ(args) -> dict:
    if args.source == "an":
        chart = _chart(args.n, args.coeffs or "")
        g = germ_from_chart(chart, args.tol)
    elif args.source == "closed":
        g = germs.germ_from_an(args.n, complex(args.a_nm1), complex(args.a_n), tol=args.tol)
    else:
        g = germs.germ_from_projective(args.n, complex(args.x0), complex(args.x1))
    if args.out:
        Path(args.out).write_text(germs.dumps_germ(g))
    return {"germ": g, "tame": g.is_tame(args.tol), "reciprocity_defect": g.reciprocity_defect(), "pass": True}


def _load_germ(path: str) -> germs.SemisimpleGerm:
    try:
        return germs.loads_germ(Path(path).read_text())
    except (OSError, KeyError, ValueError) as e:
        raise CommandError(f"cannot read germ file {path}: {e}") from e


def cmd_tensor(args) -> dict:
    gs = [_load_germ(p) for p in args.files]
    g = gs[0]
    for h in gs[1:]:
        g = germs.tensor(g, h, args.tol)
    if args.out:
        Path(args.out).write_text(germs.dumps_germ(g))
    rep = {"germ": g, "pass": True}
    if args.compare:
        m = germs.compare_germs(g, _load_germ(args.compare), args.tol)
        rep["match"] = m
        rep["pass"] = m.isomorphic
    return rep


def cmd_compare(args) -> dict:
    m = germs.compare_germs(_load_germ(args.first), _load_germ(args.second), args.tol)
    return {"match": m, "pass": m.isomorphic}


def cmd_sum_verify(args) -> dict:
    a = AnChart(len(_complexes(args.a)), tuple(_complexes(args.a)))
    b = AnChart(len(_complexes(args.b)), tuple(_complexes(args.b)))
    r = direct_sum_verify(a, b, tol=args.tol if args.tol_given else 1e-6)
    if args.out:
        Path(args.out).write_text(germs.dumps_germ(r["germ"]))
    return r


def _algebra(source: str) -> dgbv.DGBVAlgebra:
    try:
        return dgbv.resolve(source)
    except FileNotFoundError as e:
        raise CommandError(str(e)) from e


def cmd_dgbv(args) -> dict:
    d = _algebra(args.algebra)
    action = args.action
    rep = {"algebra": d.name, "action": action}
    if action == "check":
        r = dgbv.check_dgbv(d)
        integ = dgbv.integral_check(d)
        rep.update({"dgbv": r, "integral": integ, "pass": r["pass"] and integ["pass"]})
    elif action == "identities":
        chk = dgbv.check_dgbv(d)
        if not chk["pass"]:
            rep.update({"dgbv": chk, "pass": False})
        else:
            r = dgbv.identity_suite(d, samples=args.samples, seed=args.seed)
            rep.update({"identities": r, "pass": r["pass"]})
            rep["printed_poisson_sign"] = dgbv.poisson_printed_sign_check(d)
    elif action == "integral":
        r = dgbv.integral_check(d)
        rep.update(r)
    elif action == "conditions":
        c = dgbv.conditions_check(d)
        rep.update(c.to_dict(d.algebra))
        rep["pass"] = bool(c.A and c.B)
    elif action == "solve":
        sol = mc_frobenius.solve_master(d, args.order)
        res = mc_frobenius.master_residual(sol)
        rep.update({
            "variables": [v.name for v in sol.ring],
            "representatives": [d.algebra.describe(c) for c in sol.representatives],
            "gamma": _elem_list(sol, sol.gamma),
            "B": _elem_list(sol, sol.B),
            "residual_zero": not res,
            "residual_max_degree_checked": args.order,
            "normalization": mc_frobenius.normalization_report(sol),
        })
        n = rep["normalization"]
        rep["pass"] = bool(not res and n["gamma_n_in_image"] and n["unit_derivative"] and n["Delta_gamma_zero"])
    elif action in ("potential", "wdvv"):
        sol = mc_frobenius.solve_master(d, args.order)
        g = mc_frobenius.metric(d, sol)
        phi = mc_frobenius.potential(d, sol)
        wd = mc_frobenius.wdvv_check(phi, g)
        rep.update({"variables": [v.name for v in sol.ring], "metric": g, "wdvv": wd, "pass": wd["pass"]})
        if action == "potential":
            rep["potential"] = mc_frobenius.export_potential(phi)
            rep["potential_text"] = phi.to_string()
    elif action == "euler":
        sol = mc_frobenius.solve_master(d, args.order)
        phi = mc_frobenius.potential(d, sol)
        e = mc_frobenius.euler_check(d, sol, phi)
        rep.update({"euler": e, "pass": e.get("pass", True)})
    elif action == "analyze":
        r = mc_frobenius.analyze(d, args.order, directions=args.directions, seed=args.seed)
        rep.update(r)
    return rep


def _elem_list(sol, elem) -> list:
    labels = sol.dgbv.algebra.labels
    return [[list(m), labels[i], fraction_str(c)] for (m, i), c in sorted(elem.items(), key=lambda kv: (sum(kv[0][0]), kv[0]))]


def cmd_p2(args) -> dict:
    rep = qc_potential.p2_report(args.degree)
    if not args.audit_divisor:
        rep.pop("two_point", None)
    return rep


def cmd_catalog(args) -> dict:
    rows = {}
    for name in dgbv.catalog_names():
        d = dgbv.load_catalog(name)
        chk = dgbv.check_dgbv(d)
        row = {"dim": d.dim, "note": d.note, "dgbv": chk["pass"]}
        if chk["pass"]:
            c = dgbv.conditions_check(d)
            row.update({"A": c.A, "B": c.B, "C": c.C})
        rows[name] = row
    return {"catalog": rows, "directory": "frobkit/catalog", "pass": True}


def cmd_suite(args) -> dict:
    selected = set(_ints(args.criteria)) if args.criteria else None
    timings = {}
    rep = suite.run(selected, seed=args.seed, timings=timings)
    if args.timings:
        sys.stderr.write(json.dumps(timings, sort_keys=True) + "\n")
    return rep


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help=f"numeric tolerance (default {DEFAULT_TOL:g})")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--order", type=int, default=mc_frobenius.DEFAULT_ORDER, help="truncation order N")

    p = argparse.ArgumentParser(prog="frobkit", description="Frobenius manifold toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", parents=[common], help="Betti counts and profiles for sums of A_n")
    s.add_argument("--an", required=True, help="comma-separated n_k")
    s.add_argument("--require-integral", action="store_true")
    s.add_argument("--bruteforce", action="store_true", help="also count by direct enumeration")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("an", parents=[common], help="A_n unfolding at a chart point")
    s.add_argument("n", type=int)
    s.add_argument("--coeffs", required=True, help="a_1,...,a_n")
    s.add_argument("--special", action="store_true", help="special coordinates (u, eta, v)")
    s.add_argument("--flat", action="store_true")
    s.add_argument("--euler", action="store_true")
    s.add_argument("--verify-closed-form", action="store_true")
    s.set_defaults(func=cmd_an)

    s = sub.add_parser("germ", parents=[common], help="build a germ file")
    s.add_argument("source", choices=("an", "closed", "projective"))
    s.add_argument("n", type=int)
    s.add_argument("--coeffs")
    s.add_argument("--a-nm1", default="-3")
    s.add_argument("--a-n", default="0")
    s.add_argument("--x0", default="0")
    s.add_argument("--x1", default="0")
    s.add_argument("--out")
    s.set_defaults(func=cmd_germ)

    s = sub.add_parser("tensor", parents=[common], help="tensor product of germ files")
    s.add_argument("files", nargs="+")
    s.add_argument("--out")
    s.add_argument("--compare", help="germ file to compare the product with")
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("compare", parents=[common], help="compare two germ files up to relabeling")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("sum-verify", parents=[common], help="direct sum of two A_n charts vs tensor product")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sum_verify)

    s = sub.add_parser("dgbv", parents=[common], help="dGBV algebra pipelines")
    s.add_argument("action", choices=("check", "identities", "integral", "conditions", "solve", "potential",
                                      "wdvv", "euler", "analyze"))
    s.add_argument("algebra", help="file path, catalog/<name> or a catalog name")
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--directions", type=int, default=20)
    s.set_defaults(func=cmd_dgbv)

    s = sub.add_parser("p2", parents=[common], help="quantum potential of the projective plane")
    s.add_argument("--degree", type=int, default=4)
    s.add_argument("--audit-divisor", action="store_true", help="include the extended two-point table")
    s.set_defaults(func=cmd_p2)

    s = sub.add_parser("catalog", parents=[common], help="list shipped algebras")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("suite", parents=[common], help="run the acceptance criteria")
    s.add_argument("--criteria", help="comma-separated subset, default all")
    s.add_argument("--timings", action="store_true", help="print wall-clock seconds to stderr")
    s.set_defaults(func=cmd_suite)
    return p


VALUE_OPTIONS = ("--coeffs", "--a", "--b", "--a-nm1", "--a-n", "--x0", "--x1")


def _join_negative_values(argv: List[str]) -> List[str]:
    """Let values such as ``--coeffs -3,0`` through argparse."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(list(sys.argv[1:] if argv is None else argv)))
    args.tol_given = args.tol is not None
    if args.tol is None:
        args.tol = DEFAULT_TOL
    try:
        report = args.func(args)
    except (CommandError, NonTameError, VerificationError, RootFindingError, germs.CollisionError,
            dgbv.ConditionError, mc_frobenius.ObstructionError, mc_frobenius.ReductionError,
            mc_frobenius.DegenerateMetricError, ArithmeticError, ValueError) as e:
        _emit({"command": args.command, "error": type(e).__name__, "message": str(e), "pass": False}, args.format)
        return 2
    report = dict(report)
    report["command"] = args.command
    _emit(report, args.format)
    return 0 if report.get("pass", True) else 1


if __name__ == "__main__":
    sys.exit(main())
