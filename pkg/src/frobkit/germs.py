"""Tame semisimple germs recorded by special coordinates (u, eta, v)."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .graded_core import DEFAULT_TOL, fraction_str

MAX_PERMUTATION_SIZE = 12


class CollisionError(ValueError):
    """Summed canonical coordinates are not pairwise distinct."""


@dataclass(frozen=True)
class SemisimpleGerm:
    u: Tuple[complex, ...]
    eta: Tuple[complex, ...]
    v: Tuple[Tuple[complex, ...], ...]

    def __post_init__(self):
        mu = len(self.u)
        if len(self.eta) != mu or len(self.v) != mu or any(len(r) != mu for r in self.v):
            raise ValueError("inconsistent germ sizes")
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "eta", tuple(self.eta))
        object.__setattr__(self, "v", tuple(tuple(r) for r in self.v))

    @property
    def size(self) -> int:
        return len(self.u)

    def is_tame(self, tol: float = DEFAULT_TOL) -> bool:
        return _distinct(self.u, tol)

    def reciprocity_defect(self) -> float:
        """max |eta_j v_ij + eta_i v_ji| over i != j."""
        mu = self.size
        worst = 0.0
        for i in range(mu):
            for j in range(mu):
                if i != j:
                    worst = max(worst, abs(self.eta[j] * self.v[i][j] + self.eta[i] * self.v[j][i]))
        return worst

    def relabel(self, perm: Sequence[int]) -> "SemisimpleGerm":
        """New germ whose label k is the old label perm[k]."""
        return SemisimpleGerm(
            tuple(self.u[p] for p in perm),
            tuple(self.eta[p] for p in perm),
            tuple(tuple(self.v[p][q] for q in perm) for p in perm),
        )

    def shifted(self, c: complex) -> "SemisimpleGerm":
        return SemisimpleGerm(tuple(x + c for x in self.u), self.eta, self.v)


def _distinct(values: Sequence[complex], tol: float) -> bool:
    scale = max([1.0] + [abs(x) for x in values])
    return all(abs(values[i] - values[j]) > tol * scale
               for i in range(len(values)) for j in range(i + 1, len(values)))


def identity_germ(c: complex = 0) -> SemisimpleGerm:
    return SemisimpleGerm((c,), (1,), ((0,),))


def tensor(ga: SemisimpleGerm, gb: SemisimpleGerm, tol: float = DEFAULT_TOL) -> SemisimpleGerm:
    """Product germ on pairs (i, j), row-major."""
    ma, mb = ga.size, gb.size
    pairs = [(i, j) for i in range(ma) for j in range(mb)]
    u = tuple(ga.u[i] + gb.u[j] for i, j in pairs)
    if not _distinct(u, tol):
        raise CollisionError("summed canonical coordinates collide")
    eta = tuple(ga.eta[i] * gb.eta[j] for i, j in pairs)
    v = []
    for i, j in pairs:
        row = []
        for k, l in pairs:
            x = 0
            if j == l:
                x += ga.v[i][k]
            if i == k:
                x += gb.v[j][l]
            row.append(x)
        v.append(tuple(row))
    return SemisimpleGerm(u, eta, tuple(v))


def germ_from_an(n: int, a_nm1, a_n, b=None, zeta=None, tol: float = DEFAULT_TOL) -> SemisimpleGerm:
    from .an_saito import special_point_closed_form

    return special_point_closed_form(n, a_nm1, a_n, b, zeta, tol)


def germ_from_projective(n: int, x0: complex = 0, x1: complex = 0) -> SemisimpleGerm:
    """Germ of the quantum cohomology of the projective space of dimension n-1."""
    if n < 2:
        raise ValueError("n must be >= 2")
    zeta = cmath.exp(2j * math.pi / n)
    u = tuple(x0 + n * zeta ** i * cmath.exp(x1 / n) for i in range(n))
    eta = tuple(zeta ** i / n * cmath.exp(-x1 * (n - 1) / n) for i in range(n))
    v = tuple(tuple(0 if j == k else 1 / (1 - zeta ** ((k - j) % n)) for k in range(n)) for j in range(n))
    return SemisimpleGerm(u, eta, v)


class GermMatch(NamedTuple):
    isomorphic: bool
    permutation: Optional[Tuple[int, ...]]
    max_dev: float


def _dev(g1, g2, i, j):
    return max(abs(g1.u[i] - g2.u[j]), abs(g1.eta[i] - g2.eta[j]))


def compare_germs(g1: SemisimpleGerm, g2: SemisimpleGerm, tol: float = DEFAULT_TOL) -> GermMatch:
    """Search a relabeling ``perm`` with g1 label i matching g2 label perm[i]."""
    mu = g1.size
    if g2.size != mu:
        return GermMatch(False, None, math.inf)
    if mu > MAX_PERMUTATION_SIZE:
        raise ValueError(f"germ size {mu} exceeds the permutation search cap")
    cands = [sorted((j for j in range(mu) if _dev(g1, g2, i, j) <= tol),
                    key=lambda j: _dev(g1, g2, i, j)) for i in range(mu)]
    order = sorted(range(mu), key=lambda i: len(cands[i]))
    best: List = [None, math.inf]
    assign = [-1] * mu
    used = [False] * mu

    def rec(k, worst):
        if k == mu:
            if worst < best[1]:
                best[0], best[1] = tuple(assign), worst
            return
        i = order[k]
        for j in cands[i]:
            if used[j]:
                continue
            w = max(worst, _dev(g1, g2, i, j), abs(g1.v[i][i] - g2.v[j][j]))
            ok = True
            for kk in range(k):
                ii = order[kk]
                jj = assign[ii]
                w = max(w, abs(g1.v[i][ii] - g2.v[j][jj]), abs(g1.v[ii][i] - g2.v[jj][j]))
                if w > tol:
                    ok = False
                    break
            if not ok:
                continue
            used[j] = True
            assign[i] = j
            rec(k + 1, w)
            used[j] = False
            assign[i] = -1

    rec(0, 0.0)
    if best[0] is None:
        return GermMatch(False, None, math.inf)
    return GermMatch(True, best[0], float(best[1]))


# serialization ---------------------------------------------------------------


def _enc(x):
    if isinstance(x, Fraction):
        return fraction_str(x)
    z = complex(x)
    return [float(f"{z.real:.17g}"), float(f"{z.imag:.17g}")]


def _dec(x):
    if isinstance(x, str):
        return Fraction(x)
    return complex(x[0], x[1])


def germ_to_dict(g: SemisimpleGerm) -> dict:
    return {
        "format": "frobkit.germ/1",
        "size": g.size,
        "u": [_enc(x) for x in g.u],
        "eta": [_enc(x) for x in g.eta],
        "v": [[_enc(x) for x in row] for row in g.v],
    }


def germ_from_dict(d: dict) -> SemisimpleGerm:
    g = SemisimpleGerm(tuple(_dec(x) for x in d["u"]), tuple(_dec(x) for x in d["eta"]),
                       tuple(tuple(_dec(x) for x in row) for row in d["v"]))
    if d.get("size", g.size) != g.size:
        raise ValueError("declared size does not match data")
    return g


def dumps_germ(g: SemisimpleGerm) -> str:
    return json.dumps(germ_to_dict(g), sort_keys=True, indent=2)


def loads_germ(text: str) -> SemisimpleGerm:
    return germ_from_dict(json.loads(text))
