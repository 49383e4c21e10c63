from fractions import Fraction as F

import pytest

from frobkit import dgbv, mc_frobenius as mc
from frobkit.dgbv import ConditionError, DGBVAlgebra
from frobkit.graded_core import GradedSeries, GradedVariable

GOOD = ["p2-trivial", "exterior-square", "square-model", "p2-x-exterior-square", "p2-x-square-model",
        "square-model-x-exterior-square"]


@pytest.fixture(scope="module")
def p2():
    d = dgbv.load_catalog("p2-trivial")
    return d, mc.solve_master(d, 5)


def a3_potential(order=7):
    """Potential of the A3 singularity in flat coordinates with t1 the unit."""
    ring = tuple(GradedVariable(f"t{i}") for i in range(3))
    terms = {(2, 0, 1): F(1, 2), (1, 2, 0): F(1, 2), (0, 2, 2): F(-1, 16), (0, 0, 5): F(1, 960)}
    return GradedSeries(ring, order, terms), [[0, 0, 1], [0, 1, 0], [1, 0, 0]]


def test_p2_potential(p2):
    d, sol = p2
    phi = mc.potential(d, sol)
    assert phi.terms == {(2, 0, 1): F(1, 2), (1, 2, 0): F(1, 2)}
    assert not mc.master_residual(sol)


def test_trivial_operators_give_linear_gamma(p2):
    _, sol = p2
    assert all(not sol.part(n) for n in range(2, sol.order + 1))
    assert not sol.B


def test_square_model_second_order():
    d = dgbv.load_catalog("square-model")
    sol = mc.solve_master(d, 4)
    w = d.algebra.labels.index("w")
    assert sol.part(2) == {((0, 2), w): F(1, 2)}
    assert not mc.master_residual(sol)
    n = mc.normalization_report(sol)
    assert n["gamma_n_in_image"] and n["unit_derivative"] and n["Delta_gamma_zero"] and n["gamma_weight_two"]


@pytest.mark.parametrize("name", GOOD)
def test_analyze(name):
    rep = mc.analyze(dgbv.load_catalog(name), 6)
    assert rep["pass"], rep
    assert rep["wdvv"]["pass"] and rep["cube_identity"]["pass"] and rep["potentiality"]["pass"]


@pytest.mark.parametrize("name", ["eps-xi-deltazero", "eps-xi-delta"])
def test_failing_conditions_raise(name):
    with pytest.raises(ConditionError):
        mc.solve_master(dgbv.load_catalog(name))


def test_degenerate_integral():
    d = dgbv.load_catalog("square-model")
    zero = DGBVAlgebra(d.algebra, d.Delta, d.delta, (F(0),) * d.dim, d.integral_degree, "zero")
    sol = mc.solve_master(zero, 3)
    with pytest.raises(mc.DegenerateMetricError):
        mc.metric(zero, sol)


def test_tensor_metric_is_kronecker():
    a, b = dgbv.load_catalog("p2-trivial"), dgbv.load_catalog("square-model")
    ga = mc.metric(a, mc.solve_master(a, 2))
    gb = mc.metric(b, mc.solve_master(b, 2))
    t = dgbv.tensor(a, b)
    gt = mc.metric(t, mc.solve_master(t, 2))
    nb = len(gb)
    assert gt == [[ga[i // nb][k // nb] * gb[i % nb][k % nb] for k in range(len(gt))] for i in range(len(gt))]


def test_product_at_origin_is_cup_product(p2):
    d, sol = p2
    consts = mc.structure_constants(sol)
    zero = (0, 0, 0)
    cup = {(a, b): [consts[(a, b)][c].coefficient(zero) for c in range(3)] for a in range(3) for b in range(3)}
    assert cup[(1, 1)] == [0, 0, 1]
    assert cup[(1, 2)] == [0, 0, 0]
    assert cup[(0, 2)] == [0, 0, 1]


def test_lifted_metric_constant(p2):
    d, sol = p2
    g = mc.metric(d, sol)
    lm = mc.lifted_metric(sol)
    assert all(lm[i][j].terms == ({(0, 0, 0): g[i][j]} if g[i][j] else {}) for i in range(3) for j in range(3))


def test_wdvv_on_a3():
    phi, g = a3_potential()
    assert mc.wdvv_check(phi, g)["pass"]


def test_wdvv_fault_injection():
    phi, g = a3_potential()
    bad = phi + GradedSeries(phi.ring, phi.order, {(0, 2, 2): F(1, 100)})
    r = mc.wdvv_check(bad, g)
    assert not r["pass"] and r["nonzero"]


def test_wdvv_fault_on_catalog_potential():
    d = dgbv.load_catalog("exterior-square")
    sol = mc.solve_master(d, 6)
    phi = mc.potential(d, sol)
    g = mc.metric(d, sol)
    assert mc.wdvv_check(phi, g)["pass"]
    even = [i for i, v in enumerate(phi.ring) if not v.odd]
    m = [0] * len(phi.ring)
    m[even[1]] = 4
    bad = phi + GradedSeries(phi.ring, phi.order, {tuple(m): F(1)})
    assert not mc.wdvv_check(bad, g)["pass"]


def test_euler_data(p2):
    d, sol = p2
    phi = mc.potential(d, sol)
    e = mc.euler_check(d, sol, phi)
    assert e["pass"] and e["D"] == "0" and e["spectrum"] == ["1", "0", "-1"]


def test_cube_identity(p2):
    d, sol = p2
    assert mc.cube_identity_check(sol, mc.potential(d, sol), directions=5)["pass"]


def test_order_validation():
    with pytest.raises(ValueError):
        mc.solve_master(dgbv.load_catalog("p2-trivial"), 0)
