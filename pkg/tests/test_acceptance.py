"""Acceptance criteria 1-9, one printed line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import json
import sys

import pytest

from frobkit import qc_potential, spectrum, suite

# independent reference values
BETTI_3333 = [1, 19, 1]
BETTI_44444 = [1, 101, 101, 1]
P2_NUMBERS = ["1", "1", "12", "620", "87304"]


@pytest.fixture(scope="module")
def report():
    timings = {}
    rep = suite.run(seed=0, timings=timings)
    rep["timings"] = timings
    return rep


def _line(num, rep):
    r = rep["criteria"][str(num)]
    status = "PASS" if r["pass"] else "FAIL"
    extra = {k: v for k, v in r.items() if k not in ("pass", "title", "catalog", "instances")}
    for key in ("catalog", "instances"):
        if key in r:
            rows = r[key]
            extra[key] = f"{sum(1 for v in rows.values() if v['pass'])}/{len(rows)} passing"
    return f"criterion {num}: {status}  {r['title']}  {json.dumps(extra, default=str)[:160]}"


@pytest.mark.parametrize("num", range(1, 10))
def test_criterion(report, num, capsys):
    with capsys.disabled():
        print("\n" + _line(num, report), f"[{report['timings'].get(str(num), report['timings']['total'])} s]")
    assert report["criteria"][str(num)]["pass"]


def test_betti_reference_values(report):
    c1 = report["criteria"]["1"]
    assert c1["betti_3333"] == BETTI_3333
    assert c1["betti_44444"] == BETTI_44444
    assert c1["instances_compared"] > 100


def test_p2_numbers_against_recursion(report):
    assert report["criteria"]["8"]["N"] == P2_NUMBERS
    assert [str(n) for n in qc_potential.kontsevich_numbers(5)] == P2_NUMBERS


def test_betti_formula_small_brute_force():
    for ns in [(2, 2, 2), (2, 2, 2, 2, 2, 2), (3, 3, 3, 3), (2, 5, 5)]:
        if spectrum.integrality(ns)[1]:
            assert spectrum.betti(ns) == spectrum.betti_bruteforce(ns)


if __name__ == "__main__":
    timings = {}
    rep = suite.run(seed=0, timings=timings)
    rep["timings"] = timings
    for k in range(1, 10):
        print(_line(k, rep))
    sys.exit(0 if rep["pass"] else 1)
