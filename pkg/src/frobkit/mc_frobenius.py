"""Formal Frobenius structure of a dGBV algebra.

The pipeline solves the master equation ``delta G + 1/2 [G . G] = 0`` over
``K = Q[[x_i]]`` degree by degree, reads the multiplication on ``K (x) H`` off
products of lifts modulo the image of the shifted differential, and builds
the potential ``Phi = Int(G^3/6 - 1/2 delta(B) Delta(B))``.

Elements of ``K (x) A`` are dicts ``{(monomial, basis index): Fraction}``;
a term ``(m, i)`` stands for ``x^m b_i`` with the scalar part on the left.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg as la
from .dgbv import ConditionError, DGBVAlgebra, _sparse, conditions_check, homology_representatives
from .graded_core import (
    GradedSeries,
    GradedVariable,
    Monomial,
    derivative_of_monomial,
    fraction_str,
    monomial_parity,
    monomial_product_sign,
)

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)
DEFAULT_ORDER = 6

Elem = Dict[Tuple[Monomial, int], Fraction]


class ObstructionError(RuntimeError):
    """A right-hand side of the degree-wise master equation is not exact."""


class ReductionError(RuntimeError):
    """A product of lifts could not be reduced to the homology."""


class DegenerateMetricError(ValueError):
    pass


def _sgn(e: int) -> int:
    return -1 if e & 1 else 1


class ScalarExtension:
    """Arithmetic in ``K (x) A`` truncated at total x-degree ``order``."""

    def __init__(self, d: DGBVAlgebra, ring: Sequence[GradedVariable], order: int):
        self.d = d
        self.sp = _sparse(d)
        self.ring = tuple(ring)
        self.mask = tuple(v.odd for v in self.ring)
        self.order = order
        self.zero_mono = (0,) * len(self.ring)

    def mpar(self, m: Monomial) -> int:
        return monomial_parity(m, self.mask)

    def total_parity(self, m: Monomial, i: int) -> int:
        return (self.mpar(m) + self.sp.parity[i]) & 1

    # linear structure ------------------------------------------------------
    @staticmethod
    def add(a: Elem, b: Elem, s=ONE) -> Elem:
        out = dict(a)
        for k, x in b.items():
            y = out.get(k, ZERO) + s * x
            if y:
                out[k] = y
            else:
                out.pop(k, None)
        return out

    @staticmethod
    def scale(a: Elem, s) -> Elem:
        return {k: s * x for k, x in a.items()} if s else {}

    def degree_part(self, a: Elem, n: int) -> Elem:
        return {k: x for k, x in a.items() if sum(k[0]) == n}

    def upto(self, a: Elem, n: int) -> Elem:
        return {k: x for k, x in a.items() if sum(k[0]) <= n}

    def by_monomial(self, a: Elem) -> Dict[Monomial, Dict[int, Fraction]]:
        out: Dict[Monomial, Dict[int, Fraction]] = {}
        for (m, i), x in a.items():
            out.setdefault(m, {})[i] = x
        return out

    def embed(self, v: Sequence[Fraction], m: Optional[Monomial] = None) -> Elem:
        m = self.zero_mono if m is None else m
        return {(m, i): Fraction(x) for i, x in enumerate(v) if x}

    # products ----------------------------------------------------------------
    def _bilinear(self, a: Elem, b: Elem, table, shift: int, limit: int) -> Elem:
        out: Elem = {}
        par = self.sp.parity
        for (m, i), x in a.items():
            dm = sum(m)
            for (n, j), y in b.items():
                if dm + sum(n) > limit:
                    continue
                row = table.get((i, j))
                if not row:
                    continue
                s = monomial_product_sign(m, n, self.mask)
                if s == 0:
                    continue
                if (par[i] + shift) & self.mpar(n) & 1:
                    s = -s
                k = tuple(p + q for p, q in zip(m, n))
                xy = s * x * y
                for l, c in row.items():
                    key = (k, l)
                    out[key] = out.get(key, ZERO) + xy * c
        return {k: v for k, v in out.items() if v}

    def mul(self, a: Elem, b: Elem, limit: Optional[int] = None) -> Elem:
        return self._bilinear(a, b, self.sp.mt, 0, self.order if limit is None else limit)

    def bracket(self, a: Elem, b: Elem, limit: Optional[int] = None) -> Elem:
        """Odd bracket extended K-bilinearly with Koszul signs."""
        return self._bilinear(a, b, self.sp.bt, 1, self.order if limit is None else limit)

    def scalar_mul(self, f: Dict[Monomial, Fraction], a: Elem, limit: Optional[int] = None) -> Elem:
        """``f * a`` for a scalar series ``f`` given as {monomial: coefficient}."""
        lim = self.order if limit is None else limit
        out: Elem = {}
        for m, x in f.items():
            dm = sum(m)
            for (n, j), y in a.items():
                if dm + sum(n) > lim:
                    continue
                s = monomial_product_sign(m, n, self.mask)
                if s == 0:
                    continue
                key = (tuple(p + q for p, q in zip(m, n)), j)
                out[key] = out.get(key, ZERO) + s * x * y
        return {k: v for k, v in out.items() if v}

    def _odd_op(self, a: Elem, cols) -> Elem:
        out: Elem = {}
        for (m, j), x in a.items():
            s = _sgn(self.mpar(m))
            for i, c in cols[j].items():
                key = (m, i)
                out[key] = out.get(key, ZERO) + s * x * c
        return {k: v for k, v in out.items() if v}

    def Delta(self, a: Elem) -> Elem:
        return self._odd_op(a, self.sp.Dcol)

    def delta(self, a: Elem) -> Elem:
        return self._odd_op(a, self.sp.dcol)

    def bracket_by_definition(self, a: Elem, b: Elem) -> Elem:
        """(-1)^a Delta(ab) - (-1)^a Delta(a) b - a Delta(b), split by parity of a."""
        out: Elem = {}
        for p in (0, 1):
            ap = {k: x for k, x in a.items() if self.total_parity(*k) == p}
            if not ap:
                continue
            s = _sgn(p)
            out = self.add(out, self.Delta(self.mul(ap, b)), s)
            out = self.add(out, self.mul(self.Delta(ap), b), -s)
            out = self.add(out, self.mul(ap, self.Delta(b)), -1)
        return out

    def diff(self, a: Elem, i: int) -> Elem:
        out: Elem = {}
        for (m, j), x in a.items():
            r = derivative_of_monomial(m, i, self.mask)
            if r is None:
                continue
            f, k = r
            key = (k, j)
            out[key] = out.get(key, ZERO) + f * x
        return {k: v for k, v in out.items() if v}

    def integrate(self, a: Elem, order: Optional[int] = None) -> GradedSeries:
        w = self.d.integral
        terms: Dict[Monomial, Fraction] = {}
        for (m, i), x in a.items():
            if w[i]:
                terms[m] = terms.get(m, ZERO) + x * w[i]
        return GradedSeries(self.ring, self.order if order is None else order, terms)

    def to_series(self, f: Dict[Monomial, Fraction], order: Optional[int] = None) -> GradedSeries:
        return GradedSeries(self.ring, self.order if order is None else order, f)


# ---------------------------------------------------------------------------
# master equation


@dataclass
class GammaSolution:
    dgbv: DGBVAlgebra
    ring: Tuple[GradedVariable, ...]
    order: int
    representatives: List[List[Fraction]]
    gamma: Elem
    B: Elem
    ext: ScalarExtension = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.representatives)

    def part(self, n: int) -> Elem:
        return self.ext.degree_part(self.gamma, n)

    def lift(self, i: int) -> Elem:
        """Coordinate derivative of Gamma along x_i."""
        return self.ext.diff(self.gamma, i)


def formal_base(d: DGBVAlgebra, reps: Sequence[Sequence[Fraction]]) -> Tuple[GradedVariable, ...]:
    """Coordinates dual to the homology basis; parity follows c_i, weight is 2 - |c_i|."""
    alg = d.algebra
    ring = []
    for i, c in enumerate(reps):
        p = alg.parity_of(c)
        if p is None:
            raise ConditionError(f"homology representative {i} is not homogeneous")
        w = None
        if alg.weights is not None:
            ws = {alg.weights[k] for k, x in enumerate(c) if x}
            if len(ws) != 1:
                raise ConditionError(f"homology representative {i} has mixed weight")
            w = 2 - ws.pop()
        ring.append(GradedVariable(f"x{i}", bool(p), w))
    return tuple(ring)


def solve_master(d: DGBVAlgebra, order: int = DEFAULT_ORDER,
                 representatives: Optional[Sequence[Sequence[Fraction]]] = None) -> GammaSolution:
    """Normalized formal solution through x-degree ``order``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    rep = conditions_check(d)
    if not (rep.A and rep.B):
        raise ConditionError(f"conditions fail: A={rep.A} B={rep.B}")
    reps = [list(map(Fraction, c)) for c in (representatives or homology_representatives(d))]
    if reps[0] != d.algebra.one():
        raise ConditionError("first homology representative must be the unit")
    ring = formal_base(d, reps)
    ext = ScalarExtension(d, ring, order)
    nvars = len(ring)
    gamma: Elem = {}
    for i, c in enumerate(reps):
        e = [0] * nvars
        e[i] = 1
        gamma = ext.add(gamma, ext.embed(c, tuple(e)))
    parts = {1: dict(gamma)}
    B: Elem = {}
    solver = la.LinearSolver(la.matmul(d.delta, d.Delta))
    n_dim = d.dim
    for n in range(1, order):
        rhs: Elem = {}
        for i in range(1, n + 1):
            j = n + 1 - i
            if j < 1 or i > j:
                continue
            br = ext.bracket(parts[i], parts[j])
            rhs = ext.add(rhs, br, -HALF if i == j else -ONE)
        new_g: Elem = {}
        for m, vec in sorted(ext.by_monomial(rhs).items()):
            if m[0]:
                raise ObstructionError(f"right-hand side depends on x0 at {m}")
            z = solver.solve([vec.get(k, ZERO) for k in range(n_dim)])
            if z is None:
                raise ObstructionError(f"right-hand side at monomial {m} is not in Im(delta Delta)")
            s = _sgn(ext.mpar(m))
            B = ext.add(B, ext.scale(ext.embed(z, m), s))
            new_g = ext.add(new_g, ext.scale(ext.embed(d.D(z), m), s))
        parts[n + 1] = new_g
        gamma = ext.add(gamma, new_g)
    return GammaSolution(d, ring, order, reps, gamma, B, ext)


def master_residual(sol: GammaSolution) -> Elem:
    """delta G + 1/2 [G . G] with the bracket evaluated from its definition."""
    ext = sol.ext
    return ext.add(ext.delta(sol.gamma), ext.bracket_by_definition(sol.gamma, sol.gamma), HALF)


def normalization_report(sol: GammaSolution) -> dict:
    d, ext = sol.dgbv, sol.ext
    imD = la.image_basis(d.Delta)
    outside = []
    for n in range(2, sol.order + 1):
        for m, vec in sorted(ext.by_monomial(sol.part(n)).items()):
            if not la.in_span([vec.get(k, ZERO) for k in range(d.dim)], imD):
                outside.append(list(m))
    d0 = ext.diff(sol.gamma, 0)
    unit = ext.embed(d.algebra.one())
    kills = ext.Delta(sol.gamma)
    weights_ok = None
    if d.algebra.weights is not None:
        w = d.algebra.weights
        weights_ok = all(sum(e * v.weight for e, v in zip(m, sol.ring)) + w[i] == 2 for (m, i) in sol.gamma)
    return {
        "gamma_n_in_image": not outside,
        "outside_image": outside,
        "unit_derivative": d0 == unit,
        "Delta_gamma_zero": not kills,
        "gamma_weight_two": weights_ok,
    }


# ---------------------------------------------------------------------------
# metric and multiplication


def metric(d: DGBVAlgebra, sol: GammaSolution) -> List[List[Fraction]]:
    alg = d.algebra
    reps = sol.representatives
    g = [[d.integrate(alg.mul(a, b)) for b in reps] for a in reps]
    if la.determinant(g) == 0:
        raise DegenerateMetricError("pairing on homology is degenerate")
    return g


def lifted_metric(sol: GammaSolution) -> List[List[GradedSeries]]:
    """Int(X_i G . X_j G) as series; constant by the integral identities."""
    ext = sol.ext
    lifts = [sol.lift(i) for i in range(sol.rank)]
    top = sol.order - 1
    return [[ext.integrate(ext.mul(a, b, top), top) for b in lifts] for a in lifts]


class Reducer:
    """Projection of Ker(delta_G) onto K (x) H modulo Im(delta_G)."""

    def __init__(self, sol: GammaSolution):
        self.sol = sol
        d = sol.dgbv
        self.h = sol.rank
        cols = [list(c) for c in sol.representatives] + [d.d(d.algebra.basis(j)) for j in range(d.dim)]
        self.solver = la.LinearSolver(la.transpose(cols), len(cols))
        self.lifts = [sol.lift(i) for i in range(self.h)]

    def shifted_delta(self, y: Elem, limit: int) -> Elem:
        ext = self.sol.ext
        return ext.add(ext.upto(ext.delta(y), limit), ext.bracket(self.sol.gamma, y, limit))

    def reduce(self, r: Elem, limit: Optional[int] = None) -> List[Dict[Monomial, Fraction]]:
        """Coefficients f_c with r = sum f_c X_c G mod Im(delta_G), through ``limit``."""
        sol = self.sol
        ext, d = sol.ext, sol.dgbv
        top = sol.order - 1 if limit is None else limit
        coeffs: List[Dict[Monomial, Fraction]] = [dict() for _ in range(self.h)]
        rest = ext.upto(r, top)
        for k in range(top + 1):
            for m, vec in sorted(ext.by_monomial(ext.degree_part(rest, k)).items()):
                v = [vec.get(i, ZERO) for i in range(d.dim)]
                if any(d.d(v)):
                    raise ReductionError(f"leading coefficient at {m} is not a delta-cycle")
                sol_vec = self.solver.solve(v)
                if sol_vec is None:
                    raise ReductionError(f"no homology decomposition at {m}")
                alpha, y = sol_vec[: self.h], sol_vec[self.h:]
                for c, a in enumerate(alpha):
                    if a:
                        coeffs[c][m] = coeffs[c].get(m, ZERO) + a
                        rest = ext.add(rest, ext.scalar_mul({m: a}, self.lifts[c], top), -1)
                if any(y):
                    Y = ext.scale(ext.embed(y, m), _sgn(ext.mpar(m)))
                    rest = ext.add(rest, self.shifted_delta(Y, top), -1)
            if ext.degree_part(rest, k):
                raise ReductionError(f"degree {k} did not reduce to zero")
        return coeffs


def circ_product(sol: GammaSolution, X: Sequence, Y: Sequence,
                 reducer: Optional[Reducer] = None) -> List[GradedSeries]:
    """Components of X o Y for fields given by component series (or scalars)."""
    red = reducer or Reducer(sol)
    ext = sol.ext
    top = sol.order - 1

    def lift(Z):
        out: Elem = {}
        for i, f in enumerate(Z):
            terms = f.terms if isinstance(f, GradedSeries) else ({ext.zero_mono: Fraction(f)} if f else {})
            if terms:
                out = ext.add(out, ext.scalar_mul(terms, red.lifts[i], top))
        return out

    prod = ext.mul(lift(X), lift(Y), top)
    return [ext.to_series(f, top) for f in red.reduce(prod, top)]


def basis_field(sol: GammaSolution, i: int) -> List[Fraction]:
    return [ONE if j == i else ZERO for j in range(sol.rank)]


def structure_constants(sol: GammaSolution, reducer: Optional[Reducer] = None) -> Dict[Tuple[int, int], List[GradedSeries]]:
    red = reducer or Reducer(sol)
    h = sol.rank
    return {(a, b): circ_product(sol, basis_field(sol, a), basis_field(sol, b), red)
            for a in range(h) for b in range(h)}


# ---------------------------------------------------------------------------
# potential


def potential(d: DGBVAlgebra, sol: GammaSolution) -> GradedSeries:
    """Int(G^3/6 - 1/2 delta(B) Delta(B)) with terms of degree <= 2 dropped."""
    ext = sol.ext
    g2 = ext.mul(sol.gamma, sol.gamma)
    g3 = ext.mul(g2, sol.gamma)
    dB = ext.mul(ext.delta(sol.B), ext.Delta(sol.B))
    total = ext.add(ext.scale(g3, Fraction(1, 6)), dB, -HALF)
    phi = ext.integrate(total)
    return GradedSeries(phi.ring, phi.order, {m: c for m, c in phi.terms.items() if sum(m) >= 3})


def third_derivative(phi, a: int, b: int, c: int):
    """d_a d_b d_c Phi with the rightmost derivative applied first."""
    return phi.diff(c).diff(b).diff(a)


def cube_identity_check(sol: GammaSolution, phi: GradedSeries, directions: int = 20, seed: int = 0) -> dict:
    """X^3 Phi = Int((X G)^3) for random even constant directions X."""
    ext = sol.ext
    rng = random.Random(seed)
    even = [i for i, v in enumerate(sol.ring) if not v.odd]
    top = sol.order - 3
    failures = []
    for t in range(directions):
        r = {i: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for i in even}
        lhs = phi
        for _ in range(3):
            acc = None
            for i, x in r.items():
                term = lhs.diff(i).scale(x)
                acc = term if acc is None else acc + term
            lhs = acc
        xg: Elem = {}
        for i, x in r.items():
            xg = ext.add(xg, sol.lift(i), x)
        cube = ext.mul(ext.mul(xg, xg, top), xg, top)
        rhs = ext.integrate(cube, top)
        if lhs.truncated(top) != rhs:
            failures.append({"direction": {sol.ring[i].name: fraction_str(x) for i, x in r.items()}})
    return {"pass": not failures, "directions": directions, "checked_through": top, "failures": failures}


def potentiality_check(sol: GammaSolution, phi: GradedSeries, g, consts=None) -> dict:
    """g(X_a o X_b, X_c) from the reduction equals d_a d_b d_c Phi through order N-3."""
    h = sol.rank
    top = sol.order - 3
    consts = consts or structure_constants(sol)
    bad = []
    for a in range(h):
        for b in range(h):
            f = consts[(a, b)]
            for c in range(h):
                acc = GradedSeries(sol.ring, sol.order - 1)
                for e in range(h):
                    if g[e][c]:
                        acc = acc + f[e].scale(g[e][c])
                if acc.truncated(top) != third_derivative(phi, a, b, c).truncated(top):
                    bad.append([a, b, c])
    return {"pass": not bad, "checked_through": top, "mismatches": bad}


def flatness_lift_check(sol: GammaSolution, reducer: Optional[Reducer] = None, max_degree: int = 2) -> dict:
    """Lifted flatness identity on basis triples, reduced modulo Im(delta_G)."""
    red = reducer or Reducer(sol)
    ext = sol.ext
    h = sol.rank
    top = min(max_degree, sol.order - 2)
    second = {(i, j): ext.diff(red.lifts[j], i) for i in range(h) for j in range(h)}
    bad = []
    for a in range(h):
        for b in range(h):
            for c in range(h):
                def side(x, y):
                    t = ext.diff(ext.mul(red.lifts[y], red.lifts[c], top + 1), x)
                    return ext.add(ext.upto(t, top), ext.mul(red.lifts[x], second[(y, c)], top))
                s = _sgn(sol.ring[a].parity * sol.ring[b].parity)
                diff = ext.add(side(a, b), side(b, a), -s)
                classes = red.reduce(diff, top)
                if diff and any(classes):
                    bad.append([a, b, c])
    return {"pass": not bad, "checked_through": top, "failures": bad}


# ---------------------------------------------------------------------------
# WDVV


def _parities(phi, h, parities):
    if parities is not None:
        return list(parities)
    mask = getattr(phi, "odd_mask", (False,) * h)
    return [1 if o else 0 for o in mask]


def wdvv_residuals(phi, g, parities: Optional[Sequence[int]] = None) -> Dict[Tuple[int, int, int, int], object]:
    """Nonzero associativity residual series keyed by (a, b, c, f).

    With ``mu_ab^e = sum_c Phi_abc g^(ce)`` the component is
    ``sum_e mu_ab^e mu_ec^f - (-1)^(a(b+c+e)) mu_bc^e mu_ae^f``.
    """
    h = len(g)
    gq = [[Fraction(x) for x in row] for row in g]
    if la.determinant(gq) == 0:
        raise DegenerateMetricError("metric is degenerate")
    ginv = la.inverse(gq)
    par = _parities(phi, h, parities)
    third = {}
    for c in range(h):
        pc = phi.diff(c)
        for b in range(h):
            pbc = pc.diff(b)
            for a in range(h):
                third[(a, b, c)] = pbc.diff(a)
    mu = {}
    for a in range(h):
        for b in range(h):
            for e in range(h):
                acc = None
                for c in range(h):
                    if ginv[c][e]:
                        t = third[(a, b, c)].scale(ginv[c][e])
                        acc = t if acc is None else acc + t
                if acc is not None and not acc.is_zero():
                    mu[(a, b, e)] = acc
    out = {}
    for a in range(h):
        for b in range(h):
            for c in range(h):
                for f in range(h):
                    acc = None
                    for e in range(h):
                        x, y = mu.get((a, b, e)), mu.get((e, c, f))
                        if x is not None and y is not None:
                            t = x * y
                            acc = t if acc is None else acc + t
                        x, y = mu.get((b, c, e)), mu.get((a, e, f))
                        if x is not None and y is not None:
                            t = (x * y).scale(-_sgn(par[a] * (par[b] + par[c] + par[e])))
                            acc = t if acc is None else acc + t
                    if acc is not None and not acc.is_zero():
                        out[(a, b, c, f)] = acc
    return out


def wdvv_check(phi, g, order: Optional[int] = None, parities: Optional[Sequence[int]] = None) -> dict:
    """Associativity residual report through ``order`` (default: potential order - 3).

    Works on any series type offering ``diff``, ``scale``, ``+``, ``*``,
    ``is_zero``, ``truncated`` and ``items``.
    """
    h = len(g)
    if order is None:
        order = phi.order - 3
    bad = []
    for idx, r in sorted(wdvv_residuals(phi, g, parities).items()):
        r = r.truncated(order)
        if not r.is_zero():
            m, coef = r.items()[0]
            bad.append({"indices": list(idx), "term": [_jsonable(m), fraction_str(coef)]})
    return {"pass": not bad, "checked_through": order, "components": h ** 4, "nonzero": bad}


def _jsonable(m):
    if isinstance(m, tuple):
        return [_jsonable(x) for x in m]
    return m


# ---------------------------------------------------------------------------
# Euler structure


def euler_check(d: DGBVAlgebra, sol: GammaSolution, phi: GradedSeries, g=None, consts=None) -> dict:
    if d.algebra.weights is None:
        return {"skipped": True, "reason": "no weights"}
    ring = sol.ring
    dvals = [Fraction(v.weight) / 2 for v in ring]
    g = g if g is not None else metric(d, sol)
    h = sol.rank
    D_values = {dvals[a] + dvals[b] for a in range(h) for b in range(h) if g[a][b]}
    D = D_values.pop() if len(D_values) == 1 else None
    out = {
        "skipped": False,
        "spectrum": [fraction_str(x) for x in dvals],
        "unit_weight_one": dvals[0] == 1,
        "metric_consistent": D is not None,
        "D": fraction_str(D) if D is not None else None,
    }
    norm = normalization_report(sol)
    out["gamma_weight_two"] = norm["gamma_weight_two"]
    if D is None:
        out["pass"] = False
        return out
    bad_phi = [list(m) for m, _ in phi.items() if sum(e * x for e, x in zip(m, dvals)) != D + 1]
    out["potential_eigenvalue"] = fraction_str(D + 1)
    out["potential_homogeneous"] = not bad_phi
    deg = d.integral_degree
    out["integral_degree"] = fraction_str(deg) if deg is not None else None
    out["integral_degree_matches"] = deg is None or deg == 2 * D - 4
    consts = consts or structure_constants(sol)
    bad_circ = []
    for (a, b), fs in sorted(consts.items()):
        for c, f in enumerate(fs):
            want = 1 + dvals[c] - dvals[a] - dvals[b]
            if any(sum(e * x for e, x in zip(m, dvals)) != want for m, _ in f.items()):
                bad_circ.append([a, b, c])
    out["product_weight"] = not bad_circ
    out["constant_free"] = True
    out["pass"] = bool(out["unit_weight_one"] and norm["gamma_weight_two"] and not bad_phi
                       and out["integral_degree_matches"] and not bad_circ)
    return out


# ---------------------------------------------------------------------------
# full run and export


def export_potential(phi: GradedSeries) -> List[list]:
    return [[list(m), fraction_str(c)] for m, c in phi.items()]


def analyze(d: DGBVAlgebra, order: int = DEFAULT_ORDER, directions: int = 20, seed: int = 0) -> dict:
    sol = solve_master(d, order)
    res = master_residual(sol)
    norm = normalization_report(sol)
    g = metric(d, sol)
    phi = potential(d, sol)
    red = Reducer(sol)
    consts = structure_constants(sol, red)
    lm = lifted_metric(sol)
    constant_metric = all(lm[i][j] == GradedSeries(sol.ring, sol.order - 1, {sol.ext.zero_mono: g[i][j]})
                          for i in range(sol.rank) for j in range(sol.rank))
    unit_ok = all(consts[(0, b)][c] == GradedSeries(sol.ring, sol.order - 1,
                                                      {sol.ext.zero_mono: ONE} if b == c else {})
                  for b in range(sol.rank) for c in range(sol.rank))
    report = {
        "schema": "frobkit.mc/1",
        "algebra": d.name,
        "order": order,
        "variables": [{"name": v.name, "odd": v.odd,
                       "weight": fraction_str(v.weight) if v.weight is not None else None} for v in sol.ring],
        "representatives": [d.algebra.describe(c) for c in sol.representatives],
        "residual_zero": not res,
        "residual_max_degree_checked": order,
        "normalized": bool(norm["gamma_n_in_image"] and norm["unit_derivative"] and norm["Delta_gamma_zero"]),
        "normalization": norm,
        "metric": [[fraction_str(x) for x in row] for row in g],
        "lifted_metric_constant": constant_metric,
        "unit_acts_as_identity": unit_ok,
        "potential": export_potential(phi),
        "cube_identity": cube_identity_check(sol, phi, directions, seed),
        "potentiality": potentiality_check(sol, phi, g, consts),
        "flatness_lift": flatness_lift_check(sol, red),
        "wdvv": wdvv_check(phi, g),
        "euler": euler_check(d, sol, phi, g, consts),
    }
    ok = (report["residual_zero"] and report["normalized"] and constant_metric and unit_ok
          and report["cube_identity"]["pass"] and report["potentiality"]["pass"]
          and report["flatness_lift"]["pass"] and report["wdvv"]["pass"]
          and report["euler"].get("pass", True))
    report["pass"] = bool(ok)
    return report
