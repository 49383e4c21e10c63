"""Potentials of quantum-cohomology type.

A qc-series is a finite sum of terms ``q^b exp(<b, x_div>) x^m`` with exact
rational coefficients, where ``b`` runs over a lattice of curve classes and
``x_div`` are the divisor coordinates. Derivatives in a divisor coordinate act
on the exponential factor as multiplication by the matching entry of ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg as la
from .graded_core import GradedSeries, fraction_str
from .mc_frobenius import DegenerateMetricError, wdvv_check, wdvv_residuals

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]
ZERO = Fraction(0)


class QCSeries:
    __slots__ = ("nvars", "divisors", "order", "_terms")

    def __init__(self, nvars: int, divisors: Sequence[int], order: int, terms: Optional[Dict[Key, Fraction]] = None):
        self.nvars = nvars
        self.divisors = tuple(divisors)
        self.order = order
        clean = {}
        for (b, m), c in (terms or {}).items():
            b, m = tuple(b), tuple(m)
            if len(b) != len(self.divisors) or len(m) != nvars:
                raise ValueError("term shape mismatch")
            if any(x < 0 for x in b) or sum(b) > order or c == 0:
                continue
            clean[(b, m)] = Fraction(c)
        self._terms = clean

    def _like(self, terms) -> "QCSeries":
        return QCSeries(self.nvars, self.divisors, self.order, terms)

    @property
    def odd_mask(self) -> Tuple[bool, ...]:
        return (False,) * self.nvars

    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0][0]), kv[0][0], sum(kv[0][1]), kv[0][1]))

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, QCSeries):
            return NotImplemented
        return (self.nvars, self.divisors, self.order, self._terms) == \
            (other.nvars, other.divisors, other.order, other._terms)

    def __add__(self, other: "QCSeries") -> "QCSeries":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ZERO) + c
        return self._like(out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "QCSeries":
        return self._like({k: s * c for k, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, QCSeries):
            return self.scale(other)
        out: Dict[Key, Fraction] = {}
        for (b1, m1), c1 in self._terms.items():
            s1 = sum(b1)
            for (b2, m2), c2 in other._terms.items():
                if s1 + sum(b2) > self.order:
                    continue
                k = (tuple(x + y for x, y in zip(b1, b2)), tuple(x + y for x, y in zip(m1, m2)))
                out[k] = out.get(k, ZERO) + c1 * c2
        return self._like(out)

    def diff(self, i: int) -> "QCSeries":
        out: Dict[Key, Fraction] = {}
        pos = self.divisors.index(i) if i in self.divisors else None
        for (b, m), c in self._terms.items():
            if pos is not None and b[pos]:
                out[(b, m)] = out.get((b, m), ZERO) + b[pos] * c
            if m[i]:
                k = list(m)
                k[i] -= 1
                key = (b, tuple(k))
                out[key] = out.get(key, ZERO) + m[i] * c
        return self._like(out)

    def truncated(self, order: int) -> "QCSeries":
        return QCSeries(self.nvars, self.divisors, min(order, self.order), self._terms)

    def class_part(self, b: Sequence[int]) -> "QCSeries":
        b = tuple(b)
        return self._like({k: c for k, c in self._terms.items() if k[0] == b})

    def at_zero(self, keep: Sequence[int] = ()) -> "QCSeries":
        """Set every polynomial variable outside ``keep`` to zero (exponentials untouched)."""
        keep = set(keep)
        return self._like({(b, m): c for (b, m), c in self._terms.items()
                           if all(e == 0 or i in keep for i, e in enumerate(m))})

    def restrict(self, keep: Sequence[int]) -> "QCSeries":
        keep = list(keep)
        if any(i not in keep for i in self.divisors):
            raise ValueError("divisor coordinates must be kept")
        divs = [keep.index(i) for i in self.divisors]
        out = {}
        for (b, m), c in self._terms.items():
            if any(m[i] for i in range(self.nvars) if i not in keep):
                continue
            out[(b, tuple(m[i] for i in keep))] = c
        return QCSeries(len(keep), divs, self.order, out)

    def value_at_origin(self) -> Dict[Tuple[int, ...], Fraction]:
        """Coefficient of each q^b at x = 0."""
        z = (0,) * self.nvars
        return {b: c for (b, m), c in self._terms.items() if m == z}

    @classmethod
    def from_graded(cls, s: GradedSeries, divisors: Sequence[int], order: int) -> "QCSeries":
        if any(s.odd_mask):
            raise ValueError("qc-series support even coordinates only")
        nb = len(divisors)
        return cls(len(s.ring), divisors, order, {((0,) * nb, m): c for m, c in s.terms.items()})

    def to_list(self) -> List[list]:
        return [[list(b), list(m), fraction_str(c)] for (b, m), c in self.items()]

    def __repr__(self):
        return f"QCSeries({self.to_list()})"


@dataclass
class QCPotential:
    names: Tuple[str, ...]
    spectrum: Tuple[Fraction, ...]
    D: Fraction
    divisors: Tuple[int, ...]
    anticanonical: Tuple[Fraction, ...]
    metric: List[List[Fraction]]
    classical: QCSeries
    quantum: QCSeries

    def __post_init__(self):
        self.spectrum = tuple(Fraction(x) for x in self.spectrum)
        self.D = Fraction(self.D)
        self.anticanonical = tuple(Fraction(x) for x in self.anticanonical)
        self.metric = [[Fraction(x) for x in row] for row in self.metric]
        if any(sum(b) for (b, _), _ in self.classical.items()):
            raise ValueError("classical part must carry the zero class")
        if any(not any(b) for (b, _), _ in self.quantum.items()):
            raise ValueError("the zero class is not allowed in the quantum part")
        bad = [k for k, _ in self.quantum.items() if self.term_weight(k) != self.D + 1]
        bad += [k for k, _ in self.classical.items() if self.term_weight(k) != self.D + 1]
        if bad:
            raise ValueError(f"inhomogeneous terms rejected: {bad[:3]}")

    @property
    def rank(self) -> int:
        return len(self.names)

    @property
    def order(self) -> int:
        return self.quantum.order

    def term_weight(self, key: Key) -> Fraction:
        b, m = key
        return sum((e * d for e, d in zip(m, self.spectrum)), ZERO) + \
            sum((x * r for x, r in zip(b, self.anticanonical)), ZERO)

    def full(self) -> QCSeries:
        return self.classical + self.quantum


# ---------------------------------------------------------------------------
# checks


def split_check(pot: QCPotential) -> dict:
    """E Psi = (D+1) Psi, (E - E(0)) c = (D+1) c, e Psi = 0, e c = g/2 form."""
    ev = pot.D + 1
    psi_bad = [[list(b), list(m)] for (b, m), _ in pot.quantum.items() if pot.term_weight((b, m)) != ev]
    c_bad = [[list(b), list(m)] for (b, m), _ in pot.classical.items()
             if sum((e * d for e, d in zip(m, pot.spectrum)), ZERO) != ev]
    zero_class = [list(m) for (b, m), _ in pot.quantum.items() if not any(b)]
    unit_kills = pot.quantum.diff(0).is_zero()
    n = pot.rank
    nb = len(pot.divisors)
    quad: Dict[Key, Fraction] = {}
    for i in range(n):
        for j in range(n):
            if pot.metric[i][j]:
                m = [0] * n
                m[i] += 1
                m[j] += 1
                k = ((0,) * nb, tuple(m))
                quad[k] = quad.get(k, ZERO) + pot.metric[i][j] / 2
    unit_metric = pot.classical.diff(0) == pot.classical._like(quad)
    fourier = all(m[i] == 0 for (b, m), _ in pot.quantum.items() for i in pot.divisors)
    ok = not psi_bad and not c_bad and not zero_class and unit_kills and unit_metric and fourier
    return {
        "pass": ok,
        "eigenvalue": fraction_str(ev),
        "quantum_homogeneous": not psi_bad,
        "classical_homogeneous": not c_bad,
        "zero_class_absent": not zero_class,
        "unit_kills_quantum": unit_kills,
        "unit_of_classical_is_metric": unit_metric,
        "divisor_coordinates_only_in_exponent": fourier,
        "violations": psi_bad + c_bad,
    }


def _multisets(n: int, size: int):
    return combinations_with_replacement(range(n), size)


def correlator_table(pot: QCPotential, max_points: int) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Fraction]:
    """<gamma_a1 ... gamma_an>_b for b != 0 and 3 <= n <= max_points, read off Psi at x = 0."""
    table = {}
    for size in range(3, max_points + 1):
        for idx in _multisets(pot.rank, size):
            s = pot.quantum
            for i in reversed(idx):
                s = s.diff(i)
            for b, c in s.value_at_origin().items():
                if c:
                    table[(b, idx)] = c
    return table


def divisor_extend(table: Dict, divisors: Sequence[int], rank: int, max_points: Optional[int] = None) -> dict:
    """Extend a correlator table to n <= 2 points and audit the divisor identity."""
    classes = sorted({b for b, _ in table})
    top = max_points if max_points is not None else max((len(a) for _, a in table), default=0)

    def lookup(b, idx):
        return table.get((b, tuple(sorted(idx))), ZERO)

    extended = dict(table)
    inconsistent = []
    for b in classes:
        pairs = [(k, dv) for k, dv in enumerate(divisors) if b[k] != 0]
        if not pairs:
            raise ValueError(f"no divisor with nonzero pairing for class {list(b)}")
        for size in range(0, 3):
            for alpha in _multisets(rank, size):
                values = []
                for k, dv in pairs:
                    for m in range(3 - size, top - size + 1):
                        values.append(Fraction(lookup(b, alpha + (dv,) * m)) / Fraction(b[k]) ** m)
                if not values:
                    continue
                if any(v != values[0] for v in values):
                    inconsistent.append({"class": list(b), "points": list(alpha)})
                if values[0]:
                    extended[(b, alpha)] = values[0]
    audit = []
    for (b, alpha), v in sorted(extended.items()):
        if len(alpha) + 1 > top:
            continue
        for k, dv in enumerate(divisors):
            lhs = extended.get((b, tuple(sorted(alpha + (dv,)))), ZERO)
            if lhs != b[k] * v:
                audit.append({"class": list(b), "points": list(alpha), "divisor": dv})
    return {
        "table": extended,
        "consistent": not inconsistent,
        "inconsistent": inconsistent,
        "divisor_identity": not audit,
        "audit_failures": audit,
        "pass": not inconsistent and not audit,
    }


def table_to_list(table: Dict) -> List[list]:
    return [[list(b), list(a), fraction_str(v)] for (b, a), v in sorted(table.items())]


def _structure(third: Dict[Tuple[int, int, int], "QCSeries"], ginv, n):
    out = {}
    for a in range(n):
        for b in range(n):
            row = []
            for e in range(n):
                acc = None
                for c in range(n):
                    if ginv[c][e]:
                        t = third[(a, b, c)].scale(ginv[c][e])
                        acc = t if acc is None else acc + t
                row.append(acc)
            out[(a, b)] = row
    return out


def specializations(pot: QCPotential) -> dict:
    """Cup product (zero class, x = 0) and small quantum product (non-divisor x = 0)."""
    n = pot.rank
    ginv = la.inverse(pot.metric)
    phi = pot.full()
    third = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                third[(a, b, c)] = phi.diff(c).diff(b).diff(a)
    mu = _structure(third, ginv, n)
    nb = len(pot.divisors)
    cup = {k: [s.class_part((0,) * nb).at_zero().value_at_origin().get((0,) * nb, ZERO) for s in row]
           for k, row in mu.items()}
    small = {k: [s.at_zero(pot.divisors) for s in row] for k, row in mu.items()}
    assoc = True
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for f in range(n):
                    lhs = sum((cup[(a, b)][e] * cup[(e, c)][f] for e in range(n)), ZERO)
                    rhs = sum((cup[(b, c)][e] * cup[(a, e)][f] for e in range(n)), ZERO)
                    if lhs != rhs:
                        assoc = False
    return {"cup": cup, "small": small, "cup_associative": assoc}


def describe_small(pot: QCPotential, small: Dict) -> Dict[str, List[str]]:
    """Readable small quantum products: a*b -> list of 'coef q^b [e^(b.x)] X_e'."""
    out = {}
    for (a, b), row in sorted(small.items()):
        parts = []
        for e, s in enumerate(row):
            for (cls, m), c in s.items():
                mono = "".join(f"{pot.names[i]}^{k}" if k > 1 else pot.names[i] for i, k in enumerate(m) if k)
                tag = f" q^{list(cls)}" if any(cls) else ""
                parts.append(f"{fraction_str(c)}{tag}{(' ' + mono) if mono else ''} {pot.names[e]}")
        out[f"{pot.names[a]}*{pot.names[b]}"] = parts
    return out


# ---------------------------------------------------------------------------
# projective plane


P2_NAMES = ("x0", "x1", "x2")


def p2_classical(order: int) -> QCSeries:
    return QCSeries(3, (1,), order, {((0,), (2, 0, 1)): Fraction(1, 2), ((0,), (1, 2, 0)): Fraction(1, 2)})


def p2_potential(numbers: Sequence[Fraction], order: Optional[int] = None) -> QCPotential:
    """Classical cubic plus sum_d N_d q^d e^(d x1) x2^(3d-1)/(3d-1)!."""
    order = len(numbers) if order is None else order
    quantum = QCSeries(3, (1,), order, {
        ((d,), (0, 0, 3 * d - 1)): Fraction(n) / factorial(3 * d - 1) for d, n in enumerate(numbers, start=1)
    })
    return QCPotential(P2_NAMES, (1, 0, -1), 0, (1,), (3,),
                       [[0, 0, 1], [0, 1, 0], [1, 0, 0]], p2_classical(order), quantum)


def _class_residuals(phi: QCSeries, g, d: int) -> Dict[tuple, Fraction]:
    out = {}
    for comp, s in wdvv_residuals(phi, g).items():
        for (b, m), c in s.class_part((d,)).items():
            out[(comp, m)] = c
    return out


def p2_generate(max_degree: int, seed: Fraction = Fraction(1)) -> Tuple[QCPotential, dict]:
    """Determine N_2..N_max from associativity, starting from N_1 = ``seed``."""
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    numbers = [Fraction(seed)]
    g = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    for d in range(2, max_degree + 1):
        r0 = _class_residuals(p2_potential(numbers + [ZERO], d).full(), g, d)
        r1 = _class_residuals(p2_potential(numbers + [Fraction(1)], d).full(), g, d)
        keys = set(r0) | set(r1)
        value = None
        for k in sorted(keys):
            slope = r1.get(k, ZERO) - r0.get(k, ZERO)
            if slope:
                value = -r0.get(k, ZERO) / slope
                break
        if value is None:
            raise ArithmeticError(f"degree {d} is not constrained by associativity")
        bad = [k for k in keys if r0.get(k, ZERO) + value * (r1.get(k, ZERO) - r0.get(k, ZERO)) != 0]
        if bad:
            raise ArithmeticError(f"associativity is inconsistent at degree {d}")
        numbers.append(value)
    pot = p2_potential(numbers, max_degree)
    return pot, {"numbers": numbers}


def p2_report(max_degree: int) -> dict:
    pot, info = p2_generate(max_degree)
    phi = pot.full()
    wd = wdvv_check(phi, pot.metric, order=max_degree)
    sc = split_check(pot)
    table = correlator_table(pot, 3 * max_degree - 1 + 2)
    ext = divisor_extend(table, pot.divisors, pot.rank)
    specs = specializations(pot)
    ok = wd["pass"] and sc["pass"] and ext["pass"] and specs["cup_associative"]
    return {
        "schema": "frobkit.qc/1",
        "max_degree": max_degree,
        "N": [fraction_str(x) for x in info["numbers"]],
        "wdvv": {k: wd[k] for k in ("pass", "checked_through", "nonzero")},
        "split": sc,
        "divisor": {k: ext[k] for k in ("pass", "consistent", "divisor_identity")},
        "two_point": table_to_list({k: v for k, v in ext["table"].items() if len(k[1]) <= 2}),
        "cup": {f"{a},{b}": [fraction_str(x) for x in row] for (a, b), row in sorted(specs["cup"].items())},
        "small_quantum": describe_small(pot, specs["small"]),
        "pass": bool(ok),
    }


def kontsevich_numbers(max_degree: int) -> List[int]:
    """Reference recursion for rational plane curve counts."""
    from math import comb

    N = [0, 1]
    for d in range(2, max_degree + 1):
        total = 0
        for d1 in range(1, d):
            d2 = d - d1
            total += N[d1] * N[d2] * (d1 * d1 * d2 * d2 * comb(3 * d - 4, 3 * d1 - 2)
                                      - d1 ** 3 * d2 * comb(3 * d - 4, 3 * d1 - 1))
        N.append(total)
    return N[1:]


# ---------------------------------------------------------------------------
# restriction to the integral part of the spectrum


def hm_restrict(phi, metric, spectrum: Sequence, D) -> Tuple[object, dict]:
    """Drop coordinates with non-integral spectrum value and re-check associativity."""
    D = Fraction(D)
    if D.denominator != 1:
        raise ValueError(f"D = {D} is not integral")
    d = [Fraction(x) for x in spectrum]
    g = [[Fraction(x) for x in row] for row in metric]
    n = len(d)
    keep = [i for i in range(n) if d[i].denominator == 1]
    cross = [[a, b] for a in range(n) for b in range(n)
             if g[a][b] and (d[a].denominator == 1) != (d[b].denominator == 1)]
    sub = [[g[a][b] for b in keep] for a in keep]
    if not keep or la.determinant(sub) == 0:
        raise DegenerateMetricError("restricted metric is degenerate")
    restricted = phi.restrict(keep)
    order = restricted.order if isinstance(restricted, QCSeries) else restricted.order - 3
    wd = wdvv_check(restricted, sub, order=order)
    report = {
        "kept": keep,
        "dropped": [i for i in range(n) if i not in keep],
        "cross_metric_zero": not cross,
        "cross_entries": cross,
        "restricted_metric_nondegenerate": True,
        "wdvv": {k: wd[k] for k in ("pass", "checked_through", "nonzero")},
        "unchanged": len(keep) == n,
    }
    report["pass"] = bool(not cross and wd["pass"])
    return restricted, report
