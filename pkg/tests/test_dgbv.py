import random
from fractions import Fraction as F

import pytest

from frobkit import dgbv
from frobkit.dgbv import DGBVAlgebra, SuperAlgebra


def point():
    alg = SuperAlgebra(("1",), (0,), {(0, 0): {0: F(1)}}, 0, (F(0),))
    return DGBVAlgebra(alg, [[0]], [[0]], (F(1),), F(0), "point")


def bracket_by_definition(d, a, b):
    """(-1)^|a| (Delta(ab) - Delta(a) b) - a Delta(b) for homogeneous a."""
    alg = d.algebra
    s = -1 if alg.parity_of(a) else 1
    out = [s * (x - y) for x, y in zip(d.D(alg.mul(a, b)), alg.mul(d.D(a), b))]
    return [x - y for x, y in zip(out, alg.mul(a, d.D(b)))]


def test_catalog_has_documented_instances():
    names = dgbv.catalog_names()
    for want in ("p2-trivial", "exterior-square", "square-model", "eps-xi-deltazero", "eps-xi-delta",
                 "eps-xi-unit", "p2-bad-delta"):
        assert want in names


@pytest.mark.parametrize("name", ["p2-trivial", "exterior-square", "square-model", "eps-xi-deltazero",
                                  "eps-xi-delta", "square-model-x-exterior-square"])
def test_valid_instances(name):
    d = dgbv.load_catalog(name)
    assert dgbv.check_dgbv(d)["pass"]
    assert dgbv.identity_suite(d, samples=30, seed=1)["pass"]
    assert dgbv.integral_check(d)["pass"]


@pytest.mark.parametrize("name", ["eps-xi-unit", "p2-bad-delta"])
def test_invalid_instances(name):
    assert not dgbv.check_dgbv(dgbv.load_catalog(name))["pass"]


def test_bracket_matches_definition():
    rng = random.Random(5)
    for name in ("square-model", "eps-xi-deltazero", "exterior-square"):
        d = dgbv.load_catalog(name)
        alg = d.algebra
        for i in range(alg.dim):
            for j in range(alg.dim):
                a = [F(rng.randint(-2, 2)) * x for x in alg.basis(i)]
                b = alg.basis(j)
                assert d.bracket(a, b) == bracket_by_definition(d, a, b)


def test_square_model_bracket_is_nonzero():
    d = dgbv.load_catalog("square-model")
    alg = d.algebra
    assert any(any(d.bracket(alg.basis(i), alg.basis(j))) for i in range(alg.dim) for j in range(alg.dim))


def test_conditions():
    c = dgbv.conditions_check(dgbv.load_catalog("eps-xi-deltazero"))
    assert c.A and not c.B
    c = dgbv.conditions_check(dgbv.load_catalog("eps-xi-delta"))
    assert not c.A and not c.B
    c = dgbv.conditions_check(dgbv.load_catalog("p2-trivial"))
    assert c.A and c.B and c.C
    assert len(c.homology_basis) == 3


def test_corrupted_integral_is_caught():
    d = dgbv.load_catalog("p2-trivial")
    bad = DGBVAlgebra(d.algebra, d.Delta, d.delta, (F(0), F(1), F(0)), d.integral_degree, "bad")
    r = dgbv.integral_check(bad)
    assert not r["pass"]
    assert {v["identity"] for v in r["violations"]} == {"integral-degree"}


def test_corrupted_bracket_integral_is_caught():
    d = dgbv.load_catalog("square-model")
    n = d.dim
    for i in range(n):
        bad = DGBVAlgebra(d.algebra, d.Delta, d.delta, tuple(F(int(k == i)) for k in range(n)), None, "bad")
        if bad.integral != d.integral and not dgbv.integral_check(bad)["pass"]:
            return
    pytest.fail("no corrupted integral was rejected")


def test_shifted_differential_at_zero_is_delta():
    d = dgbv.load_catalog("eps-xi-delta")
    sd = dgbv.shifted_differential(d, [F(0)] * d.dim)
    assert sd.matrix == d.delta
    assert sd.nilpotent and sd.to_dict(d.algebra)["residual_zero"]


def test_shifted_differential_rejects_odd_shift():
    d = dgbv.load_catalog("exterior-square")
    with pytest.raises(ValueError):
        dgbv.shifted_differential(d, d.algebra.basis(1))


def test_tensor_with_point_is_identity():
    d = dgbv.load_catalog("square-model")
    t = dgbv.tensor(d, point())
    assert t.algebra.table == d.algebra.table
    assert t.Delta == d.Delta and t.delta == d.delta and t.integral == d.integral
    assert t.algebra.parity == d.algebra.parity


def test_tensor_bracket_formula():
    a, b = dgbv.load_catalog("square-model"), dgbv.load_catalog("exterior-square")
    t = dgbv.tensor(a, b)
    assert dgbv.tensor_bracket_check(a, b, t)["pass"]
    assert dgbv.identity_suite(t, samples=20)["pass"]


def test_tensor_matches_catalog_file():
    a, b = dgbv.load_catalog("p2-trivial"), dgbv.load_catalog("square-model")
    t = dgbv.tensor(a, b)
    cat = dgbv.load_catalog("p2-x-square-model")
    assert t.algebra.table == cat.algebra.table and t.Delta == cat.Delta and t.integral == cat.integral


def test_decomposable_mc():
    a, b = dgbv.load_catalog("square-model"), dgbv.load_catalog("p2-trivial")
    t = dgbv.tensor(a, b)
    r = dgbv.decomposable_mc(a, b, t, [F(0)] * a.dim, b.algebra.basis(1))
    assert r["residual_zero"] and r["nilpotent"] and r["anticommutes_with_Delta"]


def test_roundtrip():
    for name in dgbv.catalog_names():
        d = dgbv.load_catalog(name)
        again = dgbv.loads(dgbv.dumps(d))
        assert again.algebra.table == d.algebra.table and again.Delta == d.Delta and again.delta == d.delta


def test_parse_errors():
    with pytest.raises(ValueError):
        dgbv.loads("dgbv 2\n")
    with pytest.raises(ValueError):
        dgbv.loads("dgbv 1\nmult\n0 0 0 1\n")


def test_unknown_catalog_name():
    with pytest.raises(FileNotFoundError):
        dgbv.resolve("no-such-algebra")
