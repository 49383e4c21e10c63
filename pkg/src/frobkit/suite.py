"""Headless acceptance suite: one entry per criterion, fixed seeds."""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Callable, Dict, List

from . import dgbv, mc_frobenius, qc_potential, spectrum
from .an_saito import (AnChart, critical_data, direct_sum_verify, eta_jacobian, euler_checks, flat_coordinates,
                       symmetry_defect, verify_special_point)

# documented behaviour of every catalog algebra
CATALOG_EXPECTATIONS: Dict[str, Dict[str, bool]] = {
    "p2-trivial": {"dgbv": True, "A": True, "B": True},
    "exterior-square": {"dgbv": True, "A": True, "B": True},
    "square-model": {"dgbv": True, "A": True, "B": True},
    "eps-xi-deltazero": {"dgbv": True, "A": True, "B": False},
    "eps-xi-delta": {"dgbv": True, "A": False, "B": False},
    "eps-xi-unit": {"dgbv": False},
    "p2-bad-delta": {"dgbv": False},
    "p2-x-square-model": {"dgbv": True, "A": True, "B": True},
    "p2-x-exterior-square": {"dgbv": True, "A": True, "B": True},
    "p2-x-eps-xi-deltazero": {"dgbv": True, "A": True, "B": False},
    "square-model-x-exterior-square": {"dgbv": True, "A": True, "B": True},
}


def _timed(fn: Callable[[], dict], timings: Dict[str, float], key: str) -> dict:
    t = time.perf_counter()
    out = fn()
    timings[key] = round(time.perf_counter() - t, 3)
    return out


def criterion_1() -> dict:
    timings = {}
    values = {}
    for ns in ((3, 3, 3, 3), (4, 4, 4, 4, 4)):
        t = time.perf_counter()
        values[ns] = spectrum.betti(ns)
        timings[ns] = time.perf_counter() - t
    instances = spectrum.integral_instances(10 ** 5)
    mismatches = [list(ns) for ns in instances if spectrum.betti(ns) != spectrum.betti_bruteforce(ns)]
    ok = (values[(3, 3, 3, 3)] == [1, 19, 1] and values[(4, 4, 4, 4, 4)] == [1, 101, 101, 1]
          and all(t < 1 for t in timings.values()) and not mismatches)
    return {"pass": ok, "betti_3333": values[(3, 3, 3, 3)], "betti_44444": values[(4, 4, 4, 4, 4)],
            "instances_compared": len(instances), "mismatches": mismatches,
            "under_one_second": all(t < 1 for t in timings.values())}


def criterion_2() -> dict:
    t = time.perf_counter()
    worst = 0.0
    rows = []
    for n in range(2, 7):
        for an in (0, 5):
            r = verify_special_point(n, -(n + 1), an, tol=1e-9)
            worst = max(worst, r["max_dev"], r["eta_jk_max_dev"])
            rows.append([n, an, r["pass"]])
    elapsed = time.perf_counter() - t
    return {"pass": worst < 1e-9 and all(r[2] for r in rows) and elapsed < 5,
            "max_dev": worst, "cases": len(rows), "under_five_seconds": elapsed < 5}


def random_tame_charts(count: int, max_n: int, seed: int) -> List[AnChart]:
    rng = random.Random(seed)
    charts = []
    while len(charts) < count:
        n = rng.randint(1, max_n)
        coeffs = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(n)]
        chart = AnChart(n, tuple(coeffs))
        if critical_data(chart).tame:
            charts.append(chart)
    return charts


def criterion_3(seed: int = 0) -> dict:
    charts = random_tame_charts(50, 5, seed)
    worst = max(symmetry_defect(eta_jacobian(c)) for c in charts)
    return {"pass": worst < 1e-8, "charts": len(charts), "max_asymmetry": worst}


def criterion_4() -> dict:
    r = direct_sum_verify(AnChart(2, (-3, 0)), AnChart(2, (-12, 0)), tol=1e-6)
    return {"pass": r["pass"], "max_dev": r["max_dev"], "isomorphic": r["tensor_match"].isomorphic,
            "match_dev": r["tensor_match"].max_dev}


def criterion_5(seed: int = 0) -> dict:
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(10):
        a1 = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        a2 = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        x = flat_coordinates(AnChart(1, (a1,)))
        worst = max(worst, abs(x[0] + a1 / 2))
        x = flat_coordinates(AnChart(2, (a1, a2)))
        worst = max(worst, abs(x[0] + a1 / 3), abs(x[1] + a2 / 3))
    charts = [c for c in random_tame_charts(16, 4, seed + 1)]
    eu = euler_checks(charts, tol=1e-6)
    return {"pass": worst < 1e-10 and eu["pass"], "flat_max_dev": worst, "euler_max_dev": eu["max_dev"]}


def criterion_6(seed: int = 0) -> dict:
    rows = {}
    ok = True
    for name in dgbv.catalog_names():
        d = dgbv.load_catalog(name)
        exp = CATALOG_EXPECTATIONS.get(name)
        chk = dgbv.check_dgbv(d)
        row = {"dgbv": chk["pass"]}
        if chk["pass"]:
            ids = dgbv.identity_suite(d, samples=100, seed=seed)
            integ = dgbv.integral_check(d)
            cond = dgbv.conditions_check(d)
            row.update({"identities": ids["pass"], "integral": integ["pass"], "A": cond.A, "B": cond.B})
            good = ids["pass"] and integ["pass"]
        else:
            good = True
        if exp is None:
            good = False
            row["error"] = "catalog algebra without documented expectation"
        else:
            good = good and all(row.get(k) == v for k, v in exp.items())
        row["pass"] = good
        ok = ok and good
        rows[name] = row
    return {"pass": ok, "catalog": rows}


def criterion_7(seed: int = 0, order: int = 6) -> dict:
    rows = {}
    ok = True
    for name in dgbv.catalog_names():
        d = dgbv.load_catalog(name)
        if not dgbv.check_dgbv(d)["pass"]:
            continue
        cond = dgbv.conditions_check(d)
        if not (cond.A and cond.B):
            continue
        rep = mc_frobenius.analyze(d, order, directions=20, seed=seed)
        rows[name] = {"pass": rep["pass"], "residual_zero": rep["residual_zero"], "normalized": rep["normalized"],
                      "cube_identity": rep["cube_identity"]["pass"], "wdvv": rep["wdvv"]["pass"]}
        ok = ok and rep["pass"]
        if name == "p2-trivial":
            want = [[[2, 0, 1], "1/2"], [[1, 2, 0], "1/2"]]
            rows[name]["potential_exact"] = rep["potential"] == want
            ok = ok and rows[name]["potential_exact"]
    return {"pass": ok and "p2-trivial" in rows, "instances": rows}


def criterion_8(max_degree: int = 5) -> dict:
    rep = qc_potential.p2_report(max_degree)
    oracle = [str(x) for x in qc_potential.kontsevich_numbers(max_degree)]
    ok = rep["pass"] and rep["N"] == oracle
    return {"pass": ok, "N": rep["N"], "oracle": oracle, "wdvv": rep["wdvv"]["pass"],
            "split": rep["split"]["pass"], "divisor": rep["divisor"]["pass"]}


CRITERIA = {
    1: ("Betti counts of Gepner-type sums", criterion_1),
    2: ("A_n special point closed forms", criterion_2),
    3: ("eta_jk symmetry on random tame charts", criterion_3),
    4: ("direct sum framework matches tensor germ", criterion_4),
    5: ("flat coordinates and Euler eigenvalues", criterion_5),
    6: ("dGBV identity suite and negative instances", criterion_6),
    7: ("master equation pipeline", criterion_7),
    8: ("projective plane qc-type generator", criterion_8),
}


def run(selected=None, seed: int = 0, timings: Dict[str, float] = None) -> dict:
    """Run the criteria; wall-clock seconds go to ``timings`` so the report stays reproducible."""
    timings = {} if timings is None else timings
    t0 = time.perf_counter()
    results = {}
    for k, (title, fn) in CRITERIA.items():
        if selected and k not in selected:
            continue
        kwargs = {"seed": seed} if "seed" in fn.__code__.co_varnames else {}
        r = _timed(lambda: fn(**kwargs), timings, str(k))
        r["title"] = title
        results[str(k)] = r
    total = time.perf_counter() - t0
    timings["total"] = round(total, 3)
    if not selected or 9 in selected:
        results["9"] = {"title": "headless suite under two minutes", "under_budget": total < 120,
                        "pass": total < 120 and all(r["pass"] for r in results.values())}
    return {"schema": "frobkit.suite/1", "seed": seed, "criteria": results,
            "pass": all(r["pass"] for r in results.values())}
