import json

import pytest

from frobkit.cli import main
from frobkit.germs import dumps_germ, identity_germ


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_spectrum_k3(capsys):
    code, r, _ = run(capsys, "spectrum", "--an", "3,3,3,3")
    assert code == 0 and r["betti"] == [1, 19, 1] and r["poincare"]


def test_spectrum_quintic(capsys):
    code, r, _ = run(capsys, "spectrum", "--an", "4,4,4,4,4", "--bruteforce")
    assert code == 0 and r["betti"] == [1, 101, 101, 1] and r["paths_agree"]


def test_spectrum_requires_integral(capsys):
    code, r, _ = run(capsys, "spectrum", "--an", "2,2", "--require-integral")
    assert code != 0 and r["d"] == "2/3"


def test_spectrum_malformed(capsys):
    code, r, _ = run(capsys, "spectrum", "--an", "2,x")
    assert code == 2 and r["error"] == "CommandError"


def test_an_special(capsys):
    code, r, _ = run(capsys, "an", "2", "--coeffs", "-3,0", "--special")
    assert code == 0
    v01 = r["germ"]["v"][0][1]
    assert abs(complex(*v01) - 1 / 6) < 1e-12


def test_an_not_tame(capsys):
    code, r, _ = run(capsys, "an", "2", "--coeffs", "0,0", "--special")
    assert code == 2 and r["error"] == "NonTameError"


def test_an_closed_form(capsys):
    code, r, _ = run(capsys, "an", "3", "--coeffs", "0,-4,0", "--verify-closed-form")
    assert code == 0 and r["closed_form"]["max_dev"] < 1e-9


def test_tensor_and_sum_verify(capsys, tmp_path):
    a, b, t, s = (str(tmp_path / f) for f in ("a.json", "b.json", "t.json", "s.json"))
    assert main(["germ", "an", "2", "--coeffs", "-3,0", "--out", a]) == 0
    assert main(["germ", "an", "2", "--coeffs", "-12,0", "--out", b]) == 0
    assert main(["tensor", a, b, "--out", t]) == 0
    assert main(["sum-verify", "--a", "-3,0", "--b", "-12,0", "--out", s]) == 0
    capsys.readouterr()
    code, r, _ = run(capsys, "compare", t, s)
    assert code == 0 and r["match"]["isomorphic"]


def test_tensor_with_identity(capsys, tmp_path):
    a, one, t = (str(tmp_path / f) for f in ("a.json", "one.json", "t.json"))
    main(["germ", "projective", "3", "--x1", "0.2", "--out", a])
    (tmp_path / "one.json").write_text(dumps_germ(identity_germ()))
    capsys.readouterr()
    code, r, _ = run(capsys, "tensor", a, one, "--out", t, "--compare", a)
    assert code == 0 and r["pass"]


def test_tensor_collision(capsys, tmp_path):
    a = str(tmp_path / "a.json")
    main(["germ", "projective", "2", "--out", a])
    capsys.readouterr()
    code, r, _ = run(capsys, "tensor", a, a)
    assert code == 2 and r["error"] == "CollisionError"


def test_dgbv_check(capsys):
    code, r, _ = run(capsys, "dgbv", "check", "catalog/p2-trivial")
    assert code == 0 and r["pass"]


def test_dgbv_conditions_failure(capsys):
    code, r, _ = run(capsys, "dgbv", "conditions", "catalog/eps-xi-deltazero")
    assert code == 1 and r["A"] is True and r["B"] is False


def test_dgbv_potential(capsys):
    code, r, _ = run(capsys, "dgbv", "potential", "catalog/p2-trivial")
    assert code == 0
    assert r["potential"] == [[[2, 0, 1], "1/2"], [[1, 2, 0], "1/2"]]
    assert r["wdvv"]["pass"]


def test_dgbv_solve_refuses(capsys):
    code, r, _ = run(capsys, "dgbv", "solve", "eps-xi-delta")
    assert code == 2 and r["error"] == "ConditionError"


@pytest.mark.parametrize("deg, want", [(4, ["1", "1", "12", "620"]), (1, ["1"])])
def test_p2(capsys, deg, want):
    code, r, _ = run(capsys, "p2", "--degree", str(deg), "--audit-divisor")
    assert code == 0 and r["N"] == want and r["wdvv"]["pass"] and r["divisor"]["pass"]


def test_catalog_listing(capsys):
    code, r, _ = run(capsys, "catalog")
    assert code == 0 and "p2-trivial" in json.dumps(r)


def test_text_format(capsys):
    assert main(["spectrum", "--an", "2,2,2", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "betti: [1, 1]" in out


@pytest.mark.parametrize("argv", [
    ["dgbv", "identities", "square-model", "--seed", "7", "--samples", "20"],
    ["suite", "--criteria", "3,5,6"],
])
def test_byte_identical(capsys, argv):
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
