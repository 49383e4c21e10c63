import random

import numpy as np
import pytest
import sympy as sp

from frobkit.an_saito import (AnChart, NonTameError, critical_data, direct_sum_verify, eta_jacobian, euler_checks,
                              flat_coordinates, germ_from_chart, special_point_closed_form, symmetry_defect,
                              verify_special_point)
from frobkit.germs import compare_germs, germ_from_projective


def by_real(values):
    return sorted(values, key=lambda z: complex(z).real)


@pytest.mark.parametrize("a1, u, eta", [(-3, 2, 1 / 6), (-12, 16, 1 / 12)])
def test_a2_critical_data(a1, u, eta):
    cd = critical_data(AnChart(2, (a1, 0)))
    assert cd.tame
    got_u = by_real(cd.u)
    assert abs(got_u[0] + u) < 1e-12 and abs(got_u[1] - u) < 1e-12
    assert sorted(round(abs(x), 12) for x in cd.eta) == [round(eta, 12)] * 2


def test_a2_at_origin_not_tame():
    assert not critical_data(AnChart(2, (0, 0))).tame
    with pytest.raises(NonTameError):
        germ_from_chart(AnChart(2, (0, 0)))


def test_critical_values_against_sympy():
    z = sp.Symbol("z")
    coeffs = (1 + 1j, -2, 0.5j)
    F = z ** 4 + sum(sp.nsimplify(c) * z ** (3 - l) for l, c in enumerate(coeffs, start=1) if l <= 3)
    crit = [complex(r) for r in sp.Poly(sp.diff(F, z), z).nroots(n=30)]
    ref_u = [complex(F.subs(z, r)) for r in crit]
    cd = critical_data(AnChart(3, coeffs))
    for r in ref_u:
        assert min(abs(r - u) for u in cd.u) < 1e-9


def _eta_as_function_of_u(chart, h=1e-6):
    """Finite-difference oracle: d eta / d u = (d eta / d a)(d u / d a)^-1 with labels tracked."""
    base = critical_data(chart)
    n = chart.n

    def aligned(c):
        cd = critical_data(c)
        idx = [min(range(n), key=lambda k: abs(cd.roots[k] - r)) for r in base.roots]
        return np.array([cd.u[k] for k in idx]), np.array([cd.eta[k] for k in idx])

    dU = np.zeros((n, n), dtype=complex)
    dE = np.zeros((n, n), dtype=complex)
    a = np.array(chart.coeffs)
    for l in range(n):
        e = np.zeros(n, dtype=complex)
        e[l] = h
        up, ep = aligned(chart.with_coeffs(a + e))
        um, em = aligned(chart.with_coeffs(a - e))
        dU[:, l] = (up - um) / (2 * h)
        dE[:, l] = (ep - em) / (2 * h)
    return dE @ np.linalg.inv(dU)


def test_eta_jacobian_against_finite_differences():
    chart = AnChart(3, (-1 + 0.5j, 0.7, 0.2j))
    assert np.max(np.abs(eta_jacobian(chart) - _eta_as_function_of_u(chart))) < 1e-6


def test_eta_jacobian_symmetric():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(2, 5)
        chart = AnChart(n, tuple(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(n)))
        assert symmetry_defect(eta_jacobian(chart)) < 1e-8


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_special_point(n):
    r = verify_special_point(n, -(n + 1), 0.5)
    assert r["pass"], r


def test_special_point_rejects_zero():
    with pytest.raises(NonTameError):
        special_point_closed_form(3, 0, 1)


def test_a2_special_point_is_projective_line_shape():
    g = special_point_closed_form(2, -3, 0)
    ref = germ_from_projective(2)
    # same eta up to scale and same v after the 1/(n+1) factor
    assert abs(g.v[0][1] * 3 - ref.v[0][1]) < 1e-12


def test_flat_coordinates_low_rank():
    assert abs(flat_coordinates(AnChart(1, (2,)))[0] + 1) < 1e-15
    x = flat_coordinates(AnChart(2, (3, -6)))
    assert abs(x[0] + 1) < 1e-15 and abs(x[1] - 2) < 1e-15


def test_flat_coordinates_against_sympy():
    # z(w) from w^4 = z^4 + a1 z^2 + a2 z + a3 via series reversion in 1/w
    t = sp.Symbol("t")
    a = (sp.Rational(1, 2), sp.Rational(-1, 3), sp.Rational(2))
    # s = 1/z solves s = t * (1 + a1 s^2 + a2 s^3 + a3 s^4)^(1/4) with t = 1/w
    S = t
    for _ in range(6):
        S = sp.series(t * (1 + a[0] * S ** 2 + a[1] * S ** 3 + a[2] * S ** 4) ** sp.Rational(1, 4), t, 0, 6).removeO()
    z = sp.series(1 / S, t, 0, 4).removeO()
    got = flat_coordinates(AnChart(3, tuple(float(x) for x in a)))
    for i in range(1, 4):
        assert abs(float(z.coeff(t, i)) - got[i - 1]) < 1e-12


def test_euler_checks():
    assert euler_checks([AnChart(3, (1 + 1j, -0.5, 0.3)), AnChart(2, (-2, 0.4j))])["pass"]


def test_direct_sum():
    r = direct_sum_verify(AnChart(2, (-3, 0)), AnChart(2, (-12, 0)))
    assert r["pass"]
    numeric = r["germ"]
    assert compare_germs(numeric, numeric).isomorphic
