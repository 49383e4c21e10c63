"""Numerics of the A_n unfolding F(z) = z^(n+1) + a_1 z^(n-1) + ... + a_n and of
sums of two such unfoldings."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, NamedTuple, Sequence, Tuple, Union

import numpy as np

from .graded_core import (DEFAULT_TOL, ComplexPolynomial, laurent_invert, laurent_nth_root,
                          poly_roots)
from .germs import CollisionError, SemisimpleGerm, compare_germs, tensor


class NonTameError(ValueError):
    pass


class VerificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class AnChart:
    n: int
    coeffs: Tuple[complex, ...]  # a_1 .. a_n

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if len(self.coeffs) != self.n:
            raise ValueError(f"A_{self.n} needs {self.n} coefficients")
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    def a(self, l: int) -> complex:
        return self.coeffs[l - 1]

    @property
    def polynomial(self) -> ComplexPolynomial:
        n = self.n
        low = [0j] * (n + 2)
        low[n + 1] = 1
        for l in range(1, n + 1):
            low[n - l] = self.coeffs[l - 1]
        return ComplexPolynomial(tuple(low))

    def with_coeffs(self, coeffs) -> "AnChart":
        return AnChart(self.n, tuple(coeffs))


class CriticalData(NamedTuple):
    roots: Tuple[complex, ...]
    u: Tuple[complex, ...]
    eta: Tuple[complex, ...]
    tame: bool

    @property
    def metric_of_identity(self) -> complex:
        return sum(self.eta)


def critical_data(chart: AnChart, tol: float = DEFAULT_TOL) -> CriticalData:
    F = chart.polynomial
    dF = F.derivative()
    d2F = dF.derivative()
    roots = poly_roots(dF, tol)
    rho = tuple(r.value for r in roots)
    u = tuple(F(z) for z in rho)
    eta = []
    for z in rho:
        h = d2F(z)
        eta.append(1 / h if abs(h) > tol else complex("nan"))
    scale = max([1.0] + [abs(x) for x in u])
    distinct = all(abs(u[i] - u[j]) > tol * scale for i in range(len(u)) for j in range(i + 1, len(u)))
    tame = not any(r.multiple for r in roots) and distinct
    return CriticalData(rho, u, tuple(eta), tame)


def _require_tame(cd: CriticalData):
    if not cd.tame:
        raise NonTameError("chart is not tame (multiple critical points or colliding values)")


def _da_du(chart: AnChart, rho: Sequence[complex]) -> np.ndarray:
    """Matrix of da_l/du^k from sum_l (da_l/du^k) rho_i^(n-l) = delta_ik."""
    n = chart.n
    J = np.array([[rho[i] ** (n - l) for l in range(1, n + 1)] for i in range(n)], dtype=complex)
    if abs(np.linalg.det(J)) < 1e-300:
        raise NonTameError("singular Vandermonde system")
    return np.linalg.inv(J)


def eta_jacobian(chart: AnChart, tol: float = DEFAULT_TOL) -> np.ndarray:
    """eta_jk = d eta_j / d u^k through rho and a."""
    cd = critical_data(chart, tol)
    _require_tame(cd)
    n = chart.n
    rho, eta = cd.roots, cd.eta
    d_eta_d_rho = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for m in range(n):
            if m != j:
                d_eta_d_rho[j, m] = -eta[j] / (rho[m] - rho[j])
            else:
                d_eta_d_rho[j, j] = eta[j] * sum(1 / (rho[i] - rho[j]) for i in range(n) if i != j)
    d_rho_d_a = np.zeros((n, n), dtype=complex)
    for m in range(n):
        for l in range(1, n + 1):
            k = n - l
            d_rho_d_a[m, l - 1] = 0 if k == 0 else -k * rho[m] ** (k - 1) * eta[m]
    return d_eta_d_rho @ d_rho_d_a @ _da_du(chart, rho)


def symmetry_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.T))) if m.size else 0.0


def v_matrix(u: Sequence[complex], eta: Sequence[complex], eta_jk) -> Tuple[Tuple[complex, ...], ...]:
    mu = len(u)
    return tuple(tuple(0j if i == j else complex(0.5 * (u[j] - u[i]) * eta_jk[i][j] / eta[j]) for j in range(mu))
                 for i in range(mu))


def germ_from_chart(chart: AnChart, tol: float = DEFAULT_TOL) -> SemisimpleGerm:
    cd = critical_data(chart, tol)
    _require_tame(cd)
    ejk = eta_jacobian(chart, tol)
    return SemisimpleGerm(cd.u, cd.eta, v_matrix(cd.u, cd.eta, ejk))


def eta_jk_closed_form(n: int, a_nm1: complex, j: int, k: int) -> complex:
    """Off-diagonal eta_jk at the points a_1 = ... = a_(n-2) = 0, zeta = exp(2 pi i/n)."""
    if j == k:
        raise ValueError("closed form covers off-diagonal entries")
    zeta = cmath.exp(2j * math.pi / n)
    w = zeta ** ((k - j) % n)
    return 2 * w / ((w - 1) ** 2 * n * n * a_nm1 ** 2)


def _principal_branch(n: int, a_nm1: complex) -> complex:
    return complex(-a_nm1 / (n + 1)) ** (1.0 / n)


def special_point_closed_form(n: int, a_nm1, a_n, b=None, zeta=None, tol: float = DEFAULT_TOL) -> SemisimpleGerm:
    if n < 2:
        raise ValueError("n must be >= 2")
    a_nm1, a_n = complex(a_nm1), complex(a_n)
    if abs(a_nm1) <= tol:
        raise NonTameError("a_(n-1) = 0 is not a tame point")
    b = _principal_branch(n, a_nm1) if b is None else complex(b)
    zeta = cmath.exp(2j * math.pi / n) if zeta is None else complex(zeta)
    if abs(b ** n + a_nm1 / (n + 1)) > tol * max(1.0, abs(a_nm1)):
        raise ValueError("b^n must equal -a_(n-1)/(n+1)")
    if abs(zeta ** n - 1) > tol or any(abs(zeta ** k - 1) <= tol for k in range(1, n)):
        raise ValueError("zeta must be a primitive n-th root of unity")
    u = tuple(a_n + n / (n + 1) * zeta ** i * a_nm1 * b for i in range(n))
    eta = tuple(zeta ** i / (n * (n + 1) * b ** (n - 1)) for i in range(n))
    v = tuple(tuple(0j if j == k else 1 / ((n + 1) * (1 - zeta ** ((k - j) % n))) for k in range(n))
              for j in range(n))
    return SemisimpleGerm(u, eta, v)


def special_chart(n: int, a_nm1, a_n) -> AnChart:
    coeffs = [0] * (n - 2) + [a_nm1, a_n] if n >= 2 else [a_n]
    return AnChart(n, tuple(coeffs))


def verify_special_point(n: int, a_nm1, a_n, tol: float = DEFAULT_TOL) -> dict:
    chart = special_chart(n, a_nm1, a_n)
    cd = critical_data(chart, tol)
    if abs(complex(a_nm1)) <= tol or not cd.tame:
        raise NonTameError(f"A_{n} point with a_(n-1)={a_nm1} is not tame")
    numeric = germ_from_chart(chart, tol)
    closed = special_point_closed_form(n, a_nm1, a_n, tol=tol)
    match = compare_germs(numeric, closed, tol)
    if not match.isomorphic:
        raise VerificationError("no relabeling matches the closed forms")
    ejk = eta_jacobian(chart, tol)
    perm = match.permutation
    # eta_jk closed form is stated for the zeta-ordered labels of the closed germ
    eta_dev = 0.0
    for j in range(n):
        for k in range(n):
            if j != k:
                eta_dev = max(eta_dev, abs(ejk[j, k] - eta_jk_closed_form(n, complex(a_nm1), perm[j], perm[k])))
    return {
        "n": n,
        "max_dev": float(match.max_dev),
        "eta_jk_max_dev": float(eta_dev),
        "permutation": list(perm),
        "pass": bool(match.max_dev < tol and eta_dev < tol),
    }


def flat_coordinates(chart: AnChart, order: int = 0) -> Tuple[complex, ...]:
    """x_1..x_n: coefficients of w^(-i) in z(w), where w^(n+1) = F(z)."""
    m = max(order, chart.n + 2)
    w = laurent_nth_root(chart.polynomial, m)
    z = laurent_invert(w, m)
    return tuple(z.coefficient(-i) for i in range(1, chart.n + 1))


def euler_vector(chart: AnChart) -> np.ndarray:
    n = chart.n
    return np.array([(l + 1) / (n + 1) * chart.a(l) for l in range(1, n + 1)], dtype=complex)


def metric_potential(chart: AnChart) -> complex:
    return chart.a(1) / (chart.n + 1)


def _directional(f, chart: AnChart, direction: np.ndarray, h: float):
    a = np.array(chart.coeffs, dtype=complex)
    plus = f(chart.with_coeffs(a + h * direction))
    minus = f(chart.with_coeffs(a - h * direction))
    return (np.asarray(plus) - np.asarray(minus)) / (2 * h)


def euler_checks(charts: Union[AnChart, Sequence[AnChart]], tol: float = 1e-6, step: float = 1e-5) -> dict:
    """Finite-difference checks of the Euler field and metric potential on tame charts."""
    if isinstance(charts, AnChart):
        charts = [charts]
    worst = {"flat_eigen": 0.0, "identity_kills_potential": 0.0, "potential_eigen": 0.0,
             "metric_potential": 0.0, "euler_canonical": 0.0}
    violations = []
    for chart in charts:
        n = chart.n
        cd = critical_data(chart)
        _require_tame(cd)
        E = euler_vector(chart)
        size = max(1.0, float(np.max(np.abs(chart.coeffs))))
        h = step * size
        x = np.array(flat_coordinates(chart))
        dx = _directional(lambda c: flat_coordinates(c), chart, E, h)
        expected = np.array([(i + 1) / (n + 1) for i in range(1, n + 1)]) * x
        dev = float(np.max(np.abs(dx - expected)))
        worst["flat_eigen"] = max(worst["flat_eigen"], dev)
        e_dir = np.zeros(n, dtype=complex)
        e_dir[n - 1] = 1
        if n >= 2:
            d_e = abs(_directional(metric_potential, chart, e_dir, h))
            worst["identity_kills_potential"] = max(worst["identity_kills_potential"], float(d_e))
        D = (n + 3) / (n + 1)
        d_E = _directional(metric_potential, chart, E, h)
        dev_p = abs(d_E - (D - 1) * metric_potential(chart))
        worst["potential_eigen"] = max(worst["potential_eigen"], float(dev_p))
        # g(e_k, e_k) = e_k eta and E = sum u^k e_k
        dadu = _da_du(chart, cd.roots)
        grad = dadu[0, :] / (n + 1)
        worst["metric_potential"] = max(worst["metric_potential"],
                                        float(np.max(np.abs(grad - np.array(cd.eta)))))
        worst["euler_canonical"] = max(worst["euler_canonical"],
                                       float(np.max(np.abs(dadu @ np.array(cd.u) - E))))
        for key, val in worst.items():
            if val > tol:
                violations.append({"chart": [repr(c) for c in chart.coeffs], "check": key, "dev": val})
    return {"max_dev": worst, "violations": violations, "pass": not violations}


# direct sums ---------------------------------------------------------------------


class _SumFamily:
    """F(z1, z2; t) = z1^(nA+1) + z2^(nB+1) + sum t_pq z1^p z2^q, 0<=p<nA, 0<=q<nB."""

    def __init__(self, nA: int, nB: int):
        self.nA, self.nB = nA, nB
        self.monomials = [(p, q) for p in range(nA) for q in range(nB)]

    def value(self, t, z):
        z1, z2 = z
        return z1 ** (self.nA + 1) + z2 ** (self.nB + 1) + sum(
            c * z1 ** p * z2 ** q for c, (p, q) in zip(t, self.monomials))

    def gradient(self, t, z):
        z1, z2 = z
        g1 = (self.nA + 1) * z1 ** self.nA
        g2 = (self.nB + 1) * z2 ** self.nB
        for c, (p, q) in zip(t, self.monomials):
            if p:
                g1 += c * p * z1 ** (p - 1) * z2 ** q
            if q:
                g2 += c * q * z1 ** p * z2 ** (q - 1)
        return np.array([g1, g2])

    def hessian(self, t, z):
        z1, z2 = z
        h11 = (self.nA + 1) * self.nA * z1 ** (self.nA - 1)
        h22 = (self.nB + 1) * self.nB * z2 ** (self.nB - 1)
        h12 = 0j
        for c, (p, q) in zip(t, self.monomials):
            if p >= 2:
                h11 += c * p * (p - 1) * z1 ** (p - 2) * z2 ** q
            if q >= 2:
                h22 += c * q * (q - 1) * z1 ** p * z2 ** (q - 2)
            if p and q:
                h12 += c * p * q * z1 ** (p - 1) * z2 ** (q - 1)
        return np.array([[h11, h12], [h12, h22]])

    def critical_point(self, t, start, iters: int = 60):
        z = np.array(start, dtype=complex)
        for _ in range(iters):
            step = np.linalg.solve(self.hessian(t, z), self.gradient(t, z))
            z = z - step
            if np.max(np.abs(step)) < 1e-15 * max(1.0, float(np.max(np.abs(z)))):
                break
        return z

    def eta(self, t, z):
        return 1 / np.linalg.det(self.hessian(t, z))


def direct_sum_verify(chartA: AnChart, chartB: AnChart, tol: float = 1e-6, rel_step: float = 1e-5) -> dict:
    """Build the sum framework numerically and compare with the product formulas."""
    ca, cb = critical_data(chartA), critical_data(chartB)
    _require_tame(ca)
    _require_tame(cb)
    nA, nB = chartA.n, chartB.n
    fam = _SumFamily(nA, nB)
    t0 = np.zeros(len(fam.monomials), dtype=complex)
    for idx, (p, q) in enumerate(fam.monomials):
        if q == 0 and p >= 1:
            t0[idx] = chartA.a(nA - p)
        elif p == 0 and q >= 1:
            t0[idx] = chartB.a(nB - q)
    t0[fam.monomials.index((0, 0))] = chartA.a(nA) + chartB.a(nB)
    pairs = [(i, j) for i in range(nA) for j in range(nB)]
    mu = len(pairs)
    crit = [fam.critical_point(t0, (ca.roots[i], cb.roots[j])) for i, j in pairs]
    u = np.array([fam.value(t0, z) for z in crit])
    scale = max(1.0, float(np.max(np.abs(u))))
    for I in range(mu):
        for K in range(I + 1, mu):
            if abs(u[I] - u[K]) <= DEFAULT_TOL * scale:
                raise CollisionError("sum framework is not tame: colliding canonical values")
    eta = np.array([fam.eta(t0, z) for z in crit])
    u_sum = np.array([ca.u[i] + cb.u[j] for i, j in pairs])
    eta_prod = np.array([ca.eta[i] * cb.eta[j] for i, j in pairs])
    # du^I/dt_m is the monomial at the critical point
    J = np.array([[z[0] ** p * z[1] ** q for (p, q) in fam.monomials] for z in crit])
    dt_du = np.linalg.inv(J)
    deta_dt = np.zeros((mu, mu), dtype=complex)
    for m in range(mu):
        h = rel_step * max(1.0, abs(t0[m]))
        tp, tm = t0.copy(), t0.copy()
        tp[m] += h
        tm[m] -= h
        for I in range(mu):
            zp = fam.critical_point(tp, crit[I])
            zm = fam.critical_point(tm, crit[I])
            deta_dt[I, m] = (fam.eta(tp, zp) - fam.eta(tm, zm)) / (2 * h)
    eta_IK = deta_dt @ dt_du
    ea, eb = eta_jacobian(chartA), eta_jacobian(chartB)
    formula = np.zeros((mu, mu), dtype=complex)
    for I, (i, j) in enumerate(pairs):
        for K, (k, l) in enumerate(pairs):
            x = 0j
            if j == l:
                x += ea[i, k] * cb.eta[l]
            if i == k:
                x += ca.eta[k] * eb[j, l]
            formula[I, K] = x
    block = max([abs(eta_IK[I, K]) for I, (i, j) in enumerate(pairs) for K, (k, l) in enumerate(pairs)
                 if i != k and j != l] or [0.0])
    numeric_germ = SemisimpleGerm(tuple(complex(x) for x in u), tuple(complex(x) for x in eta),
                                  v_matrix(u, eta, eta_IK))
    product_germ = tensor(germ_from_chart(chartA), germ_from_chart(chartB))
    match = compare_germs(product_germ, numeric_germ, tol)
    devs = {
        "u": float(np.max(np.abs(u - u_sum))),
        "eta": float(np.max(np.abs(eta - eta_prod))),
        "eta_IK": float(np.max(np.abs(eta_IK - formula))),
        "eta_IK_diagonal": float(np.max(np.abs(np.diag(eta_IK) - np.diag(formula)))),
        "off_block": float(block),
        "symmetry": symmetry_defect(eta_IK),
    }
    return {
        "max_dev": devs,
        "germ": numeric_germ,
        "tensor_match": match,
        "pass": bool(all(v < tol for v in devs.values()) and match.isomorphic),
    }
