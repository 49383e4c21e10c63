"""Finite-dimensional dGBV algebras over the rationals.

Elements are coordinate vectors in a fixed basis. Operators are square
matrices stored column-wise: ``M[i][j]`` is the coefficient of ``b_i`` in the
image of ``b_j``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg as la
from .graded_core import as_fraction, fraction_str

Vec = List[Fraction]
ZERO = Fraction(0)
ONE = Fraction(1)

CATALOG_DIR = Path(__file__).with_name("catalog")


class ConditionError(ValueError):
    pass


def _vz(n: int) -> Vec:
    return [ZERO] * n


def _vadd(a: Sequence[Fraction], b: Sequence[Fraction], s: Fraction = ONE) -> Vec:
    return [x + s * y for x, y in zip(a, b)]


def _vscale(a: Sequence[Fraction], s) -> Vec:
    return [s * x for x in a]


def _sgn(e: int) -> int:
    return -1 if e & 1 else 1


@dataclass
class SuperAlgebra:
    labels: Tuple[str, ...]
    parity: Tuple[int, ...]
    table: Dict[Tuple[int, int], Dict[int, Fraction]]
    unit: int = 0
    weights: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        self.labels = tuple(self.labels)
        self.parity = tuple(int(p) & 1 for p in self.parity)
        if self.weights is not None:
            self.weights = tuple(Fraction(w) for w in self.weights)
        clean = {}
        for (i, j), row in self.table.items():
            r = {k: Fraction(c) for k, c in row.items() if c != 0}
            if r:
                clean[(i, j)] = r
        self.table = clean
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be unique")
        if len(self.parity) != self.dim or (self.weights is not None and len(self.weights) != self.dim):
            raise ValueError("basis metadata length mismatch")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def basis(self, i: int) -> Vec:
        v = _vz(self.dim)
        v[i] = ONE
        return v

    def one(self) -> Vec:
        return self.basis(self.unit)

    def mul(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
        out = _vz(self.dim)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                row = self.table.get((i, j))
                if row:
                    xy = x * y
                    for k, c in row.items():
                        out[k] += xy * c
        return out

    def parity_of(self, a: Sequence[Fraction]) -> Optional[int]:
        ps = {self.parity[i] for i, x in enumerate(a) if x}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def split(self, a: Sequence[Fraction]) -> Tuple[Vec, Vec]:
        even = [x if self.parity[i] == 0 else ZERO for i, x in enumerate(a)]
        odd = [x if self.parity[i] == 1 else ZERO for i, x in enumerate(a)]
        return even, odd

    def left_multiplication(self, a: Sequence[Fraction]) -> la.Matrix:
        cols = [self.mul(a, self.basis(j)) for j in range(self.dim)]
        return la.transpose(cols)

    def describe(self, v: Sequence[Fraction]) -> str:
        parts = [f"{fraction_str(x)}*{self.labels[i]}" for i, x in enumerate(v) if x]
        return " + ".join(parts) if parts else "0"


def check_superalgebra(alg: SuperAlgebra) -> List[dict]:
    out = []
    n = alg.dim
    for i in range(n):
        for j in range(n):
            ab = alg.mul(alg.basis(i), alg.basis(j))
            ba = alg.mul(alg.basis(j), alg.basis(i))
            s = _sgn(alg.parity[i] * alg.parity[j])
            if ab != _vscale(ba, s):
                out.append({"identity": "supercommutativity", "witness": [alg.labels[i], alg.labels[j]]})
            for k, c in alg.table.get((i, j), {}).items():
                if alg.parity[k] != (alg.parity[i] + alg.parity[j]) % 2:
                    out.append({"identity": "parity-additivity", "witness": [alg.labels[i], alg.labels[j]]})
                if alg.weights is not None and alg.weights[k] != alg.weights[i] + alg.weights[j]:
                    out.append({"identity": "weight-additivity", "witness": [alg.labels[i], alg.labels[j]]})
    for i in range(n):
        if alg.mul(alg.one(), alg.basis(i)) != alg.basis(i):
            out.append({"identity": "unit", "witness": [alg.labels[i]]})
    for i in range(n):
        for j in range(n):
            ab = alg.mul(alg.basis(i), alg.basis(j))
            for k in range(n):
                lhs = alg.mul(ab, alg.basis(k))
                rhs = alg.mul(alg.basis(i), alg.mul(alg.basis(j), alg.basis(k)))
                if lhs != rhs:
                    out.append({"identity": "associativity",
                                "witness": [alg.labels[i], alg.labels[j], alg.labels[k]]})
    return out


def apply(m: la.Matrix, v: Sequence[Fraction]) -> Vec:
    return la.matvec(m, v)


def _zero_op(n: int) -> la.Matrix:
    return la.zeros(n, n)


@dataclass
class DGBVAlgebra:
    algebra: SuperAlgebra
    Delta: la.Matrix
    delta: la.Matrix
    integral: Tuple[Fraction, ...]
    integral_degree: Optional[Fraction] = None
    name: str = ""
    note: str = ""
    factor_names: Optional[Tuple[str, str]] = None
    factors: Optional[Tuple["DGBVAlgebra", "DGBVAlgebra"]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        n = self.algebra.dim
        self.Delta = [[Fraction(x) for x in row] for row in self.Delta]
        self.delta = [[Fraction(x) for x in row] for row in self.delta]
        self.integral = tuple(Fraction(x) for x in self.integral)
        if self.integral_degree is not None:
            self.integral_degree = Fraction(self.integral_degree)
        if len(self.Delta) != n or len(self.delta) != n or len(self.integral) != n:
            raise ValueError("operator or integral size mismatch")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def D(self, v):
        return apply(self.Delta, v)

    def d(self, v):
        return apply(self.delta, v)

    def integrate(self, v: Sequence[Fraction]) -> Fraction:
        return sum((x * y for x, y in zip(self.integral, v) if x and y), ZERO)

    def partial(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
        return bracket(self.algebra, self.Delta, a, b)

    def bracket(self, a, b) -> Vec:
        return bracket(self.algebra, self.Delta, a, b)


# ---------------------------------------------------------------------------
# brackets and checks


def bracket(alg: SuperAlgebra, Delta: la.Matrix, a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    """[a . b] = (-1)^a Delta(ab) - (-1)^a (Delta a) b - a Delta b, extended by parity parts."""
    out = _vz(alg.dim)
    for part, p in zip(alg.split(a), (0, 1)):
        if not any(part):
            continue
        s = _sgn(p)
        t = _vscale(apply(Delta, alg.mul(part, b)), s)
        t = _vadd(t, alg.mul(apply(Delta, part), b), -s)
        t = _vadd(t, alg.mul(part, apply(Delta, b)), -ONE)
        out = _vadd(out, t)
    return out


def partial_operator(alg: SuperAlgebra, Delta: la.Matrix, a: Sequence[Fraction]) -> la.Matrix:
    cols = [bracket(alg, Delta, a, alg.basis(j)) for j in range(alg.dim)]
    return la.transpose(cols)


def _op_parity_violations(alg: SuperAlgebra, m: la.Matrix, name: str, shift: Optional[int]) -> List[dict]:
    out = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            if m[i][j] == 0:
                continue
            if alg.parity[i] == alg.parity[j]:
                out.append({"identity": f"{name}-odd", "witness": [alg.labels[j], alg.labels[i]]})
            if alg.weights is not None and shift is not None and alg.weights[i] != alg.weights[j] + shift:
                out.append({"identity": f"{name}-weight-shift", "witness": [alg.labels[j], alg.labels[i]]})
    return out


SVec = Dict[int, Fraction]


def _sadd(a: SVec, b: SVec, s=1) -> SVec:
    out = dict(a)
    for k, x in b.items():
        y = out.get(k, ZERO) + s * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def _sscale(a: SVec, s) -> SVec:
    return {k: s * x for k, x in a.items()} if s else {}


def to_sparse(v: Sequence[Fraction]) -> SVec:
    return {i: Fraction(x) for i, x in enumerate(v) if x}


def to_dense(v: SVec, n: int) -> Vec:
    out = _vz(n)
    for k, x in v.items():
        out[k] = x
    return out


class SparseStructure:
    """Product, bracket and operators as sparse bilinear and linear tables."""

    def __init__(self, alg: SuperAlgebra, Delta: la.Matrix, delta: Optional[la.Matrix] = None):
        self.alg = alg
        n = alg.dim
        self.parity = alg.parity
        self.Dcol = [{i: Delta[i][j] for i in range(n) if Delta[i][j]} for j in range(n)]
        self.dcol = [{i: delta[i][j] for i in range(n) if delta[i][j]} for j in range(n)] if delta else [{} for _ in range(n)]
        self.mt = alg.table
        self.bt: Dict[Tuple[int, int], SVec] = {}
        for i in range(n):
            s = _sgn(self.parity[i])
            ei = {i: ONE}
            Dei = self.Dcol[i]
            for j in range(n):
                ej = {j: ONE}
                t = _sscale(self.D(self.mul(ei, ej)), s)
                t = _sadd(t, self.mul(Dei, ej), -s)
                t = _sadd(t, self.mul(ei, self.Dcol[j]), -1)
                if t:
                    self.bt[(i, j)] = t

    @staticmethod
    def _bilinear(table, a: SVec, b: SVec) -> SVec:
        out: SVec = {}
        for i, x in a.items():
            for j, y in b.items():
                row = table.get((i, j))
                if row:
                    xy = x * y
                    for k, c in row.items():
                        out[k] = out.get(k, ZERO) + xy * c
        return {k: x for k, x in out.items() if x}

    @staticmethod
    def _linear(cols, a: SVec) -> SVec:
        out: SVec = {}
        for j, x in a.items():
            for i, c in cols[j].items():
                out[i] = out.get(i, ZERO) + x * c
        return {k: v for k, v in out.items() if v}

    def mul(self, a: SVec, b: SVec) -> SVec:
        return self._bilinear(self.mt, a, b)

    def br(self, a: SVec, b: SVec) -> SVec:
        return self._bilinear(self.bt, a, b)

    def D(self, a: SVec) -> SVec:
        return self._linear(self.Dcol, a)

    def d(self, a: SVec) -> SVec:
        return self._linear(self.dcol, a)

    def parity_of(self, a: SVec) -> int:
        ps = {self.parity[k] for k in a}
        if len(ps) > 1:
            raise ValueError("inhomogeneous element")
        return ps.pop() if ps else 0


def _sparse(d: "DGBVAlgebra") -> SparseStructure:
    cached = d.__dict__.get("_sparse_cache")
    if cached is None:
        cached = SparseStructure(d.algebra, d.Delta, d.delta)
        d.__dict__["_sparse_cache"] = cached
    return cached


def _is_derivation(alg: SuperAlgebra, op, parity: int, name: str, sp: SparseStructure, labels=None) -> List[dict]:
    out = []
    n = alg.dim
    for i in range(n):
        bi = {i: ONE}
        for j in range(n):
            bj = {j: ONE}
            lhs = op(sp.mul(bi, bj))
            rhs = _sadd(sp.mul(op(bi), bj), sp.mul(bi, op(bj)), _sgn(parity * alg.parity[i]))
            if lhs != rhs:
                out.append({"identity": name, "witness": (labels or []) + [alg.labels[i], alg.labels[j]]})
    return out


def check_gbv(alg: SuperAlgebra, Delta: la.Matrix) -> dict:
    v = list(check_superalgebra(alg))
    v += _op_parity_violations(alg, Delta, "Delta", -1)
    if any(apply(Delta, alg.one())):
        v.append({"identity": "Delta(1)=0", "witness": []})
    if not la.is_zero_matrix(la.matmul(Delta, Delta)):
        v.append({"identity": "Delta^2=0", "witness": []})
    sp = SparseStructure(alg, Delta)
    for a in range(alg.dim):
        ea = {a: ONE}
        v += _is_derivation(alg, lambda x, ea=ea: sp.br(ea, x), alg.parity[a] + 1,
                            "second-order", sp, [alg.labels[a]])
    return {"pass": not v, "violations": v}


def check_dgbv(d: DGBVAlgebra) -> dict:
    rep = check_gbv(d.algebra, d.Delta)
    v = list(rep["violations"])
    alg = d.algebra
    v += _op_parity_violations(alg, d.delta, "delta", 1)
    if not la.is_zero_matrix(la.matmul(d.delta, d.delta)):
        v.append({"identity": "delta^2=0", "witness": []})
    anti = la.matadd(la.matmul(d.delta, d.Delta), la.matmul(d.Delta, d.delta))
    if not la.is_zero_matrix(anti):
        v.append({"identity": "delta Delta + Delta delta = 0", "witness": []})
    sp = _sparse(d)
    v += _is_derivation(alg, sp.d, 1, "delta-derivation", sp)
    return {"pass": not v, "violations": v}


def _random_homogeneous(alg: SuperAlgebra, rng: random.Random) -> SVec:
    p = rng.randrange(2)
    idx = [i for i in range(alg.dim) if alg.parity[i] == p]
    if not idx:
        p = 1 - p
        idx = [i for i in range(alg.dim) if alg.parity[i] == p]
    v = {}
    for i in idx:
        x = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if x:
            v[i] = x
    return v


def identity_suite(d: DGBVAlgebra, samples: int = 100, seed: int = 0, basis_triples: bool = True) -> dict:
    """Consequences of the axioms, checked exactly on basis tuples and random triples."""
    alg = d.algebra
    sp = _sparse(d)
    rng = random.Random(seed)
    br, mul = sp.br, sp.mul
    counts: Dict[str, int] = {}
    failures: List[dict] = []

    def record(name, ok, witness):
        counts[name] = counts.get(name, 0) + 1
        if not ok:
            failures.append({"identity": name,
                             "witness": [alg.describe(to_dense(w, alg.dim)) for w in witness]})

    triples = []
    if basis_triples:
        B = [{i: ONE} for i in range(alg.dim)]
        triples += [(a, b, c) for a in B for b in B for c in B]
    for _ in range(samples):
        triples.append(tuple(_random_homogeneous(alg, rng) for _ in range(3)))

    for a, b, c in triples:
        pa, pb = sp.parity_of(a), sp.parity_of(b)
        sab = _sgn((pa + 1) * (pb + 1))
        bab = br(a, b)
        # odd Poisson identity: d_a is a derivation of parity a+1
        lhs = br(a, mul(b, c))
        rhs = _sadd(mul(bab, c), mul(b, br(a, c)), _sgn((pa + 1) * pb))
        record("derivation", lhs == rhs, (a, b, c))
        # [Delta, d_a] = d_(Delta a)
        lhs = _sadd(sp.D(bab), br(a, sp.D(b)), -_sgn(pa + 1))
        record("Delta-commutator", lhs == br(sp.D(a), b), (a, b))
        # [d_a, d_b] = d_([a.b]) on c
        lhs = _sadd(br(a, br(b, c)), br(b, br(a, c)), -sab)
        record("bracket-commutator", lhs == br(bab, c), (a, b, c))
        record("anticommutativity", bab == _sscale(br(b, a), -sab), (a, b))
        rhs = _sadd(br(bab, c), br(b, br(a, c)), sab)
        record("jacobi", br(a, br(b, c)) == rhs, (a, b, c))
        # [delta, d_a] = d_(delta a)
        lhs = _sadd(sp.d(bab), br(a, sp.d(b)), -_sgn(pa + 1))
        record("delta-commutator", lhs == br(sp.d(a), b), (a, b))
        # Delta differentiates the bracket
        rhs = _sadd(br(sp.D(a), b), br(a, sp.D(b)), _sgn(pa + 1))
        record("Delta-bracket-derivation", sp.D(bab) == rhs, (a, b))

    factors = d.factors
    if factors is None and d.factor_names:
        factors = tuple(load_catalog(x) for x in d.factor_names)
    if factors is not None:
        t = tensor_bracket_check(factors[0], factors[1], d)
        counts["tensor-bracket"] = t["checked"]
        counts["tensor-partial-operator"] = t["checked"]
        failures += t["violations"]
    return {"pass": not failures, "checked": dict(sorted(counts.items())), "violations": failures}


def poisson_printed_sign_check(d: DGBVAlgebra) -> dict:
    """The odd Poisson rule with sign (-1)^(a(b+1)) on basis triples."""
    alg = d.algebra
    sp = _sparse(d)
    bad = []
    for ia in range(alg.dim):
        a = {ia: ONE}
        for ib in range(alg.dim):
            b = {ib: ONE}
            s = _sgn(alg.parity[ia] * (alg.parity[ib] + 1))
            bab = sp.br(a, b)
            for ic in range(alg.dim):
                c = {ic: ONE}
                lhs = sp.br(a, sp.mul(b, c))
                rhs = _sadd(sp.mul(bab, c), sp.mul(b, sp.br(a, c)), s)
                if lhs != rhs:
                    bad.append([alg.labels[ia], alg.labels[ib], alg.labels[ic]])
    return {"pass": not bad, "violations": bad}


class ShiftedDifferential:
    def __init__(self, d: DGBVAlgebra, a: Sequence[Fraction]):
        alg = d.algebra
        if alg.parity_of(a) not in (0,):
            raise ValueError("shift element must be even")
        self.a = list(a)
        self.matrix = la.matadd(d.delta, partial_operator(alg, d.Delta, a))
        self.residual = _vadd(d.d(a), d.bracket(a, a), Fraction(1, 2))
        self.nilpotent = la.is_zero_matrix(la.matmul(self.matrix, self.matrix))
        comm = la.matadd(la.matmul(self.matrix, d.Delta), la.matmul(d.Delta, self.matrix))
        self.anticommutes_with_Delta = la.is_zero_matrix(comm)
        self.Delta_kills = not any(d.D(a))

    def to_dict(self, alg: SuperAlgebra) -> dict:
        return {
            "residual": alg.describe(self.residual),
            "residual_zero": not any(self.residual),
            "nilpotent": self.nilpotent,
            "anticommutes_with_Delta": self.anticommutes_with_Delta,
            "Delta_a_zero": self.Delta_kills,
        }


def shifted_differential(d: DGBVAlgebra, a: Sequence[Fraction]) -> ShiftedDifferential:
    return ShiftedDifferential(d, a)


# ---------------------------------------------------------------------------
# conditions and homology


def _cols(vectors):
    return [list(v) for v in vectors]


@dataclass
class ConditionsReport:
    A: bool
    B: bool
    C: bool
    dims: Dict[str, int]
    homology_basis: List[Vec]
    homology_dims: Dict[str, int]

    def to_dict(self, alg: SuperAlgebra) -> dict:
        return {
            "A": self.A,
            "B": self.B,
            "C": self.C,
            "dims": dict(sorted(self.dims.items())),
            "homology_dims": dict(sorted(self.homology_dims.items())),
            "homology_basis": [alg.describe(v) for v in self.homology_basis],
        }


def _span_dim(vectors, n) -> int:
    return len(la.column_space(vectors, n))


def _blocks(alg: SuperAlgebra):
    keys = []
    for i in range(alg.dim):
        key = (alg.parity[i], alg.weights[i] if alg.weights is not None else None)
        if key not in keys:
            keys.append(key)
    return [[i for i in range(alg.dim)
             if (alg.parity[i], alg.weights[i] if alg.weights is not None else None) == k] for k in keys]


def homology_representatives(d: DGBVAlgebra) -> List[Vec]:
    """Homogeneous basis of (Ker Delta & Ker delta) / Im delta Delta, unit first."""
    alg, n = d.algebra, d.dim
    dD = la.matmul(d.delta, d.Delta)
    boundaries = la.image_basis(dD)
    chosen: List[Vec] = []
    one = alg.one()
    if any(d.D(one)) or any(d.d(one)):
        raise ConditionError("unit is not a cycle")
    if la.in_span(one, boundaries):
        raise ConditionError("unit is a boundary")
    chosen.append(one)
    stacked = [row[:] for row in d.Delta] + [row[:] for row in d.delta]
    for block in _blocks(alg):
        sub = [[row[j] for j in block] for row in stacked]
        for w in la.nullspace(sub, len(block)):
            v = _vz(n)
            for j, x in zip(block, w):
                v[j] = x
            if not la.in_span(v, boundaries + chosen):
                chosen.append(v)
    first = lambda v: next(i for i, x in enumerate(v) if x)
    rest = sorted(chosen[1:], key=first)
    return [chosen[0]] + rest


def conditions_check(d: DGBVAlgebra) -> ConditionsReport:
    n = d.dim
    kerD = la.kernel_basis(d.Delta)
    kerd = la.kernel_basis(d.delta)
    imD = la.image_basis(d.Delta)
    imd = la.image_basis(d.delta)
    imdD = la.image_basis(la.matmul(d.delta, d.Delta))
    imd_kerD = la.intersect(imd, kerD, n)
    imD_kerd = la.intersect(imD, kerd, n)
    cycles = la.intersect(kerD, kerd, n)
    sums = la.column_space(imd + imD, n)
    c_space = la.intersect(cycles, sums, n) if sums else []
    dims = {
        "Ker Delta": len(kerD), "Ker delta": len(kerd), "Im Delta": len(imD), "Im delta": len(imd),
        "Im delta Delta": len(imdD), "Im delta & Ker Delta": len(imd_kerD),
        "Im Delta & Ker delta": len(imD_kerd), "Ker & Ker": len(cycles),
        "(Ker & Ker) & (Im + Im)": len(c_space),
    }
    A = len(imdD) == len(imd_kerD)
    B = len(imdD) == len(imD_kerd)
    C = len(imdD) == len(c_space)
    # three presentations of the homology
    d_of_kerD = la.column_space([d.d(v) for v in kerD], n)
    D_of_kerd = la.column_space([d.D(v) for v in kerd], n)
    hom = {
        "cycles/Im delta Delta": len(cycles) - len(imdD),
        "H(Ker Delta, delta)": len(cycles) - len(d_of_kerD),
        "H(Ker delta, Delta)": len(cycles) - len(D_of_kerd),
        "H(A, delta)": len(kerd) - len(imd),
        "H(A, Delta)": len(kerD) - len(imD),
    }
    basis = homology_representatives(d) if (A and B) else []
    return ConditionsReport(A, B, C, dims, basis, hom)


# ---------------------------------------------------------------------------
# integral


def integral_check(d: DGBVAlgebra) -> dict:
    alg = d.algebra
    n = d.dim
    v = []
    for i in range(n):
        if d.integral[i] != 0 and alg.parity[i] == 1:
            v.append({"identity": "integral-even", "witness": [alg.labels[i]]})
    for i in range(n):
        a = alg.basis(i)
        pa = alg.parity[i]
        for j in range(n):
            b = alg.basis(j)
            lhs = d.integrate(alg.mul(d.d(a), b))
            rhs = _sgn(pa + 1) * d.integrate(alg.mul(a, d.d(b)))
            if lhs != rhs:
                v.append({"identity": "integral-delta", "witness": [alg.labels[i], alg.labels[j]]})
            lhs = d.integrate(alg.mul(d.D(a), b))
            rhs = _sgn(pa) * d.integrate(alg.mul(a, d.D(b)))
            if lhs != rhs:
                v.append({"identity": "integral-Delta", "witness": [alg.labels[i], alg.labels[j]]})
    kerD = la.kernel_basis(d.Delta)
    for k in kerD:
        for j in range(n):
            b = alg.basis(j)
            for x, y in ((k, b), (b, k)):
                for part in alg.split(x):
                    if any(part) and d.integrate(d.bracket(part, y)) != 0:
                        v.append({"identity": "integral-bracket", "witness": [alg.describe(x), alg.describe(y)]})
    if alg.weights is not None and d.integral_degree is not None:
        for i in range(n):
            if d.integral[i] != 0 and alg.weights[i] + d.integral_degree != 0:
                v.append({"identity": "integral-degree", "witness": [alg.labels[i]]})
    return {"pass": not v, "violations": v}


# ---------------------------------------------------------------------------
# tensor products


def _tensor_labels(l1, l2, u1, u2):
    raw = []
    for i, a in enumerate(l1):
        for j, b in enumerate(l2):
            if i == u1 and j == u2:
                raw.append("1")
            elif j == u2:
                raw.append(a)
            elif i == u1:
                raw.append(b)
            else:
                raw.append(f"{a}.{b}")
    if len(set(raw)) != len(raw):
        raw = [f"{a}.{b}" for a in l1 for b in l2]
    return tuple(raw)


def _tensor_op(d1: DGBVAlgebra, d2: DGBVAlgebra, m1, m2) -> la.Matrix:
    n1, n2 = d1.dim, d2.dim
    n = n1 * n2
    out = la.zeros(n, n)
    for i in range(n1):
        for j in range(n2):
            src = i * n2 + j
            for k in range(n1):
                if m1[k][i]:
                    out[k * n2 + j][src] += m1[k][i]
            s = _sgn(d1.algebra.parity[i])
            for l in range(n2):
                if m2[l][j]:
                    out[i * n2 + l][src] += s * m2[l][j]
    return out


def tensor(d1: DGBVAlgebra, d2: DGBVAlgebra, name: Optional[str] = None) -> DGBVAlgebra:
    a1, a2 = d1.algebra, d2.algebra
    n1, n2 = a1.dim, a2.dim
    parity = tuple((a1.parity[i] + a2.parity[j]) % 2 for i in range(n1) for j in range(n2))
    weights = None
    if a1.weights is not None and a2.weights is not None:
        weights = tuple(a1.weights[i] + a2.weights[j] for i in range(n1) for j in range(n2))
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for (i, k), r1 in a1.table.items():
        for (j, l), r2 in a2.table.items():
            s = _sgn(a2.parity[j] * a1.parity[k])
            row = table.setdefault((i * n2 + j, k * n2 + l), {})
            for p, c1 in r1.items():
                for q, c2 in r2.items():
                    key = p * n2 + q
                    row[key] = row.get(key, ZERO) + s * c1 * c2
    alg = SuperAlgebra(_tensor_labels(a1.labels, a2.labels, a1.unit, a2.unit), parity, table,
                       a1.unit * n2 + a2.unit, weights)
    integral = tuple(d1.integral[i] * d2.integral[j] for i in range(n1) for j in range(n2))
    deg = None
    if d1.integral_degree is not None and d2.integral_degree is not None:
        deg = d1.integral_degree + d2.integral_degree
    out = DGBVAlgebra(alg, _tensor_op(d1, d2, d1.Delta, d2.Delta), _tensor_op(d1, d2, d1.delta, d2.delta),
                      integral, deg, name or f"{d1.name}-x-{d2.name}",
                      f"tensor product of {d1.name} and {d2.name}")
    out.factors = (d1, d2)
    out.factor_names = (d1.name, d2.name)
    return out


def _embed(d1: DGBVAlgebra, d2: DGBVAlgebra, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
    n2 = d2.dim
    out = _vz(d1.dim * n2)
    for i, a in enumerate(x):
        if a:
            for j, b in enumerate(y):
                if b:
                    out[i * n2 + j] += a * b
    return out


def _kron_apply(f_cols, g_cols, g_parity: int, A1: SuperAlgebra, n2: int, k: int, l: int) -> SVec:
    """(f x g)(e_k x e_l) = (-1)^(|g| |e_k|) f(e_k) x g(e_l)."""
    s = _sgn(g_parity * A1.parity[k])
    out: SVec = {}
    for p, x in f_cols[k].items():
        for q, y in g_cols[l].items():
            out[p * n2 + q] = out.get(p * n2 + q, ZERO) + s * x * y
    return {key: v for key, v in out.items() if v}


def tensor_bracket_check(d1: DGBVAlgebra, d2: DGBVAlgebra, T: DGBVAlgebra) -> dict:
    """Brackets of decomposable basis elements against the Kunneth formulas.

    Both the element form and the operator form are compared with the bracket
    computed from the product Delta.
    """
    A1, A2 = d1.algebra, d2.algebra
    s1, s2, sT = _sparse(d1), _sparse(d2), _sparse(T)
    n1, n2 = A1.dim, A2.dim
    bad = []
    checked = 0
    for i in range(n1):
        left1 = [s1.mul({i: ONE}, {k: ONE}) for k in range(n1)]
        part1 = [s1.br({i: ONE}, {k: ONE}) for k in range(n1)]
        for j in range(n2):
            pa2 = A2.parity[j]
            left2 = [_sscale(s2.mul({j: ONE}, {l: ONE}), _sgn(pa2)) for l in range(n2)]
            plain2 = [s2.mul({j: ONE}, {l: ONE}) for l in range(n2)]
            part2 = [s2.br({j: ONE}, {l: ONE}) for l in range(n2)]
            a = i * n2 + j
            for k in range(n1):
                pb1 = A1.parity[k]
                for l in range(n2):
                    lhs = sT.bt.get((a, k * n2 + l), {})
                    # element form
                    e1 = {p * n2 + q: x * y for p, x in part1[k].items() for q, y in plain2[l].items()}
                    e2 = {p * n2 + q: x * y for p, x in left1[k].items() for q, y in part2[l].items()}
                    rhs = _sadd(_sscale(e1, _sgn(pa2 * (pb1 + 1))), e2, _sgn(pb1 * (pa2 + 1)))
                    rhs = {key: v for key, v in rhs.items() if v}
                    # operator form
                    op = _sadd(_kron_apply(part1, left2, pa2, A1, n2, k, l),
                               _kron_apply(left1, part2, pa2 + 1, A1, n2, k, l))
                    checked += 1
                    if lhs != rhs:
                        bad.append({"identity": "tensor-bracket",
                                    "witness": [A1.labels[i], A2.labels[j], A1.labels[k], A2.labels[l]]})
                    if lhs != op:
                        bad.append({"identity": "tensor-partial-operator",
                                    "witness": [A1.labels[i], A2.labels[j], A1.labels[k], A2.labels[l]]})
    return {"pass": not bad, "checked": checked, "violations": bad}


def decomposable_mc(d1: DGBVAlgebra, d2: DGBVAlgebra, T: DGBVAlgebra, a1, a2) -> dict:
    """Residual of a1 x 1 + 1 x a2 in the Maurer-Cartan equation of the tensor product."""
    a = _vadd(_embed(d1, d2, a1, d2.algebra.one()), _embed(d1, d2, d1.algebra.one(), a2))
    sd = ShiftedDifferential(T, a)
    return {"element": a, "residual_zero": not any(sd.residual), "Delta_a_zero": sd.Delta_kills,
            "nilpotent": sd.nilpotent, "anticommutes_with_Delta": sd.anticommutes_with_Delta}


# ---------------------------------------------------------------------------
# text format


def _fmt(x: Fraction) -> str:
    return fraction_str(x)


def dumps(d: DGBVAlgebra) -> str:
    alg = d.algebra
    lines = ["dgbv 1", f"name {d.name}"]
    if d.note:
        lines.append(f"note {d.note}")
    if d.factor_names:
        lines.append("factors " + " ".join(d.factor_names))
    lines += [
        f"dim {alg.dim}",
        "labels " + " ".join(alg.labels),
        "parity " + " ".join(str(p) for p in alg.parity),
    ]
    if alg.weights is not None:
        lines.append("weights " + " ".join(_fmt(w) for w in alg.weights))
    lines.append(f"unit {alg.unit}")
    if d.integral_degree is not None:
        lines.append(f"integral-degree {_fmt(d.integral_degree)}")
    lines.append("mult")
    for (i, j) in sorted(alg.table):
        for k in sorted(alg.table[(i, j)]):
            lines.append(f"{i} {j} {k} {_fmt(alg.table[(i, j)][k])}")
    lines.append("end")
    for key, m in (("Delta", d.Delta), ("delta", d.delta)):
        lines.append(key)
        for src in range(alg.dim):
            for dst in range(alg.dim):
                if m[dst][src]:
                    lines.append(f"{src} {dst} {_fmt(m[dst][src])}")
        lines.append("end")
    lines.append("integral " + " ".join(_fmt(x) for x in d.integral))
    return "\n".join(lines) + "\n"


def loads(text: str) -> DGBVAlgebra:
    meta: Dict[str, str] = {}
    sections: Dict[str, List[List[str]]] = {}
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if current is not None:
            if line == "end":
                current = None
            else:
                sections[current].append(line.split())
            continue
        key, _, rest = line.partition(" ")
        if key in ("mult", "Delta", "delta"):
            current = key
            sections[key] = []
        else:
            meta[key] = rest.strip()
    if current is not None:
        raise ValueError(f"section {current} not terminated")
    if meta.get("dgbv") != "1":
        raise ValueError("missing or unsupported 'dgbv' header")
    n = int(meta["dim"])
    labels = tuple(meta["labels"].split())
    parity = tuple(int(x) for x in meta["parity"].split())
    weights = tuple(as_fraction(x) for x in meta["weights"].split()) if "weights" in meta else None
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for i, j, k, c in sections.get("mult", []):
        row = table.setdefault((int(i), int(j)), {})
        row[int(k)] = row.get(int(k), ZERO) + as_fraction(c)
    alg = SuperAlgebra(labels, parity, table, int(meta.get("unit", 0)), weights)
    ops = {}
    for key in ("Delta", "delta"):
        m = la.zeros(n, n)
        for src, dst, c in sections.get(key, []):
            m[int(dst)][int(src)] += as_fraction(c)
        ops[key] = m
    integral = tuple(as_fraction(x) for x in meta["integral"].split())
    deg = as_fraction(meta["integral-degree"]) if "integral-degree" in meta else None
    factors = tuple(meta["factors"].split()) if "factors" in meta else None
    return DGBVAlgebra(alg, ops["Delta"], ops["delta"], integral, deg, meta.get("name", ""),
                       meta.get("note", ""), factors)


def load(path) -> DGBVAlgebra:
    return loads(Path(path).read_text())


def catalog_names() -> List[str]:
    return sorted(p.stem for p in CATALOG_DIR.glob("*.dgbv"))


def load_catalog(name: str) -> DGBVAlgebra:
    p = CATALOG_DIR / f"{name}.dgbv"
    if not p.exists():
        raise FileNotFoundError(f"no catalog algebra named {name!r}")
    return load(p)


def resolve(source: str) -> DGBVAlgebra:
    """A path, ``catalog/<name>`` or a bare catalog name."""
    p = Path(source)
    if p.exists():
        return load(p)
    name = source.split("/", 1)[1] if source.startswith("catalog/") else source
    return load_catalog(name.removesuffix(".dgbv"))


def element(alg: SuperAlgebra, coeffs: Dict[str, Fraction]) -> Vec:
    v = _vz(alg.dim)
    for label, c in coeffs.items():
        v[alg.labels.index(label)] += Fraction(c)
    return v
