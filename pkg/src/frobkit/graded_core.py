"""Arithmetic substrate: scalars, complex polynomials, Laurent series at infinity
and Z/2-graded truncated power series.

Two scalar regimes are used and never mixed inside one computation:
exact rationals (:class:`fractions.Fraction`) and complex floats.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _iproduct
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

Scalar = Union[Fraction, complex]

DEFAULT_TOL = float(os.environ.get("FROBKIT_TOL", "1e-9"))


class RootFindingError(RuntimeError):
    pass


class RingMismatchError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions and "p/q" strings into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_small(x, tol: float) -> bool:
    return abs(x) <= tol


# ---------------------------------------------------------------------------
# Univariate complex polynomials


@dataclass(frozen=True)
class ComplexPolynomial:
    """Polynomial with coefficients stored lowest degree first."""

    coeffs: Tuple[Scalar, ...]

    def __post_init__(self):
        cs = tuple(self.coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        if not cs:
            cs = (0,)
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_highest(cls, coeffs: Sequence[Scalar]) -> "ComplexPolynomial":
        return cls(tuple(reversed(list(coeffs))))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Scalar:
        return self.coeffs[-1]

    def __call__(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "ComplexPolynomial":
        if self.degree == 0:
            return ComplexPolynomial((0,))
        return ComplexPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def is_monic(self) -> bool:
        return self.leading == 1


class Root(NamedTuple):
    value: complex
    multiple: bool


def _root_sort_key(z: complex, tol: float):
    if abs(z.imag) <= tol * max(1.0, abs(z)):
        arg = 0.0 if z.real >= 0 else math.pi
    else:
        arg = math.atan2(z.imag, z.real) % (2 * math.pi)
    return (round(arg, 9), round(abs(z), 9))


def poly_roots(p: ComplexPolynomial, tol: float = DEFAULT_TOL, max_iter: int = 2000) -> List[Root]:
    """All roots of ``p`` by Aberth-Ehrlich iteration followed by Newton polishing.

    A root is flagged ``multiple`` when its inclusion disk overlaps another one.
    Roots are sorted by (argument in [0, 2pi), modulus).
    """
    d = p.degree
    if d < 1:
        raise ValueError("poly_roots needs degree >= 1")
    lead = complex(p.leading)
    mon = [complex(c) / lead for c in p.coeffs]
    if d == 1:
        return [Root(-mon[0], False)]
    mp = ComplexPolynomial(tuple(mon))
    dmp = mp.derivative()
    radius = 1.0 + max(abs(c) for c in mon[:-1])
    scale = max(1.0, max(abs(c) for c in mon))
    # initial guesses on a circle, rotated off the axes
    zs = [0.5 * radius * cmath.exp(1j * (2 * math.pi * k / d + 0.4)) for k in range(d)]
    converged = False
    for _ in range(max_iter):
        biggest = 0.0
        new = list(zs)
        for i in range(d):
            z = new[i]
            pz = mp(z)
            dpz = dmp(z)
            if pz == 0:
                continue
            ratio = pz / dpz if dpz != 0 else complex(1e-3, 1e-3)
            s = sum(1.0 / (z - new[j]) for j in range(d) if j != i and new[j] != z)
            denom = 1.0 - ratio * s
            step = ratio / denom if denom != 0 else ratio
            new[i] = z - step
            biggest = max(biggest, abs(step) / max(1.0, abs(z)))
        zs = new
        if biggest < 1e-15:
            converged = True
            break
    # Newton polishing for simple roots
    for i in range(d):
        for _ in range(3):
            dpz = dmp(zs[i])
            if dpz == 0:
                break
            step = mp(zs[i]) / dpz
            if abs(step) > 1e-6 * max(1.0, abs(zs[i])):
                break
            zs[i] -= step
    residual_ok = all(abs(mp(z)) <= tol * scale * max(1.0, abs(z)) ** d for z in zs)
    if not (converged or residual_ok):
        raise RootFindingError(f"root iteration did not converge for degree {d}")
    if not residual_ok:
        raise RootFindingError("root residual exceeds tolerance")
    # inclusion radii from Weierstrass corrections
    radii = []
    for i in range(d):
        prod = 1.0 + 0j
        for j in range(d):
            if j != i:
                prod *= zs[i] - zs[j]
        w = abs(mp(zs[i])) / abs(prod) if prod != 0 else math.inf
        radii.append(d * w)
    flags = [False] * d
    for i in range(d):
        for j in range(i + 1, d):
            if abs(zs[i] - zs[j]) <= radii[i] + radii[j] + tol * max(1.0, abs(zs[i])):
                flags[i] = flags[j] = True
    roots = [Root(z, f) for z, f in zip(zs, flags)]
    roots.sort(key=lambda r: _root_sort_key(r.value, tol))
    return roots


# ---------------------------------------------------------------------------
# one-variable power series helpers (generic scalars)


def _ps_mul(a: Sequence, b: Sequence, m: int) -> list:
    out = [0] * m
    for i, x in enumerate(a[:m]):
        if x == 0:
            continue
        for j in range(min(len(b), m - i)):
            out[i + j] += x * b[j]
    return out


def _ps_pow(a: Sequence, k: int, m: int) -> list:
    out = [1] + [0] * (m - 1)
    for _ in range(k):
        out = _ps_mul(out, a, m)
    return out


def _ps_real_power(u: Sequence, alpha, m: int) -> list:
    """(1 + u)^alpha for u with u[0] = 0, by the J.C.P. Miller recurrence."""
    g = [1] + [0] * (m - 1)
    for k in range(1, m):
        acc = 0
        for j in range(1, k + 1):
            if j < len(u) and u[j] != 0:
                acc += ((alpha + 1) * j - k) * u[j] * g[k - j]
        g[k] = acc * Fraction(1, k)
    return g


def _ps_inverse(a: Sequence, m: int) -> list:
    if a[0] == 0:
        raise ZeroDivisionError("series with zero constant term")
    inv0 = 1 / a[0] if not isinstance(a[0], int) else Fraction(1, a[0])
    out = [inv0] + [0] * (m - 1)
    for k in range(1, m):
        acc = 0
        for j in range(1, k + 1):
            if j < len(a):
                acc += a[j] * out[k - j]
        out[k] = -acc * inv0
    return out


@dataclass(frozen=True)
class LaurentAtInfinity:
    """``sum_k coeffs[k] * var^(1 - k)``: leading term var^1, then var^0, var^-1, ..."""

    coeffs: Tuple[Scalar, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coefficient(self, power: int) -> Scalar:
        k = 1 - power
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0


def laurent_nth_root(p: ComplexPolynomial, order: int) -> LaurentAtInfinity:
    """w(z) = p(z)^(1/(n+1)) = z + c0 + c1/z + ... with ``order`` coefficients."""
    if not p.is_monic():
        raise ValueError("laurent_nth_root needs a monic polynomial")
    deg = p.degree
    if deg < 1:
        raise ValueError("degree must be at least 1")
    # p(z) = z^deg (1 + sum_k u_k s^k), s = 1/z
    u = [0] * max(order, 1)
    for k in range(1, min(order, deg + 1)):
        u[k] = p.coeffs[deg - k]
    g = _ps_real_power(u, Fraction(1, deg), order)
    return LaurentAtInfinity(tuple(g))


def laurent_invert(w: LaurentAtInfinity, order: Optional[int] = None) -> LaurentAtInfinity:
    """Reverse w = z + O(1) to z(w) = w + O(1) via Lagrange inversion."""
    m = order or w.order
    if w.coeffs[0] != 1:
        raise ValueError("series must start with z")
    h = list(w.coeffs[:m]) + [0] * max(0, m - w.order)
    # t = 1/w = s / h(s); s(t) = t*K(t) with [t^k] s = (1/k) [s^(k-1)] h^k
    K = [0] * m
    hk = [1] + [0] * (m - 1)
    for k in range(1, m + 1):
        hk = _ps_mul(hk, h, m)
        K[k - 1] = hk[k - 1] * Fraction(1, k)
    return LaurentAtInfinity(tuple(_ps_inverse(K, m)))


def laurent_compose(w: LaurentAtInfinity, z: LaurentAtInfinity, order: int) -> LaurentAtInfinity:
    """w(z(v)) truncated, both series leading with their variable."""
    m = order
    # z(v) = v * Z(t), t = 1/v ; w(z) = z * W(1/z)
    Z = list(z.coeffs[:m]) + [0] * max(0, m - z.order)
    W = list(w.coeffs[:m]) + [0] * max(0, m - w.order)
    Zinv = _ps_inverse(Z, m)
    # 1/z = t * Zinv(t)
    out = [0] * m
    power = [1] + [0] * (m - 1)  # (t*Zinv)^k
    tz = [0] + Zinv[: m - 1]
    for k in range(m):
        for i in range(m):
            out[i] += W[k] * power[i]
        power = _ps_mul(power, tz, m)
    return LaurentAtInfinity(tuple(_ps_mul(Z, out, m)))


# ---------------------------------------------------------------------------
# graded truncated power series


@dataclass(frozen=True)
class GradedVariable:
    name: str
    odd: bool = False
    weight: Optional[Fraction] = None

    @property
    def parity(self) -> int:
        return 1 if self.odd else 0


Monomial = Tuple[int, ...]


def monomial_parity(m: Monomial, odd_mask: Sequence[bool]) -> int:
    return sum(e for e, o in zip(m, odd_mask) if o) & 1


def monomial_product_sign(m: Monomial, n: Monomial, odd_mask: Sequence[bool]) -> int:
    """Sign of x^m x^n -> x^(m+n) in canonical order, or 0 if an odd variable repeats."""
    sign = 1
    seen_after = 0
    # count pairs (i in m odd, j in n odd, i > j)
    for idx in range(len(m) - 1, -1, -1):
        if not odd_mask[idx]:
            continue
        if n[idx] and m[idx]:
            return 0
        if n[idx] and seen_after & 1:
            sign = -sign
        if m[idx]:
            seen_after += 1
    return sign


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomials_of_degree(nvars: int, deg: int, odd_mask: Sequence[bool]) -> List[Monomial]:
    """Lexicographically ordered exponent vectors of total degree ``deg``."""
    out = []

    def rec(i, left, acc):
        if i == nvars:
            if left == 0:
                out.append(tuple(acc))
            return
        top = min(left, 1) if odd_mask[i] else left
        for e in range(top, -1, -1):
            acc.append(e)
            rec(i + 1, left - e, acc)
            acc.pop()

    rec(0, deg, [])
    return out


def derivative_of_monomial(m: Monomial, i: int, odd_mask: Sequence[bool]):
    """Left derivative d/dx_i of x^m: returns (factor, new monomial) or None."""
    if m[i] == 0:
        return None
    if odd_mask[i]:
        passed = sum(m[j] for j in range(i) if odd_mask[j])
        factor = -1 if passed & 1 else 1
    else:
        factor = m[i]
    new = list(m)
    new[i] -= 1
    return factor, tuple(new)


class GradedSeries:
    """Truncated supercommutative power series in a fixed ordered ring."""

    __slots__ = ("ring", "order", "_terms")

    def __init__(self, ring: Sequence[GradedVariable], order: int, terms: Optional[Mapping] = None):
        self.ring = tuple(ring)
        names = [v.name for v in self.ring]
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.order = order
        mask = self.odd_mask
        clean: Dict[Monomial, Scalar] = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != len(self.ring):
                raise ValueError("exponent vector length mismatch")
            if sum(m) > order or c == 0:
                continue
            if any(o and e > 1 for e, o in zip(m, mask)):
                continue
            clean[m] = c
        self._terms = clean

    # construction -------------------------------------------------------
    @classmethod
    def constant(cls, ring, order, value) -> "GradedSeries":
        return cls(ring, order, {(0,) * len(ring): value})

    @classmethod
    def variable(cls, ring, order, i: int, coeff=Fraction(1)) -> "GradedSeries":
        m = [0] * len(ring)
        m[i] = 1
        return cls(ring, order, {tuple(m): coeff})

    @classmethod
    def monomial(cls, ring, order, m: Monomial, coeff=Fraction(1)) -> "GradedSeries":
        return cls(ring, order, {tuple(m): coeff})

    # basic access -------------------------------------------------------
    @property
    def odd_mask(self) -> Tuple[bool, ...]:
        return tuple(v.odd for v in self.ring)

    @property
    def terms(self) -> Dict[Monomial, Scalar]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0])))

    def coefficient(self, m: Monomial):
        return self._terms.get(tuple(m), 0)

    def is_zero(self, tol: Optional[float] = None) -> bool:
        if tol is None:
            return not self._terms
        return all(abs(c) <= tol for c in self._terms.values())

    def degree_part(self, d: int) -> "GradedSeries":
        return GradedSeries(self.ring, self.order, {m: c for m, c in self._terms.items() if sum(m) == d})

    def truncated(self, order: int) -> "GradedSeries":
        return GradedSeries(self.ring, min(order, self.order), self._terms)

    def parity_part(self, parity: int) -> "GradedSeries":
        mask = self.odd_mask
        return GradedSeries(self.ring, self.order,
                            {m: c for m, c in self._terms.items() if monomial_parity(m, mask) == parity})

    def _check(self, other: "GradedSeries"):
        if not isinstance(other, GradedSeries) or self.ring != other.ring:
            raise RingMismatchError("series live in different rings")
        if self.order != other.order:
            raise RingMismatchError("series have different truncation orders")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GradedSeries):
            return self + GradedSeries.constant(self.ring, self.order, other)
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return GradedSeries(self.ring, self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedSeries(self.ring, self.order, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "GradedSeries":
        return GradedSeries(self.ring, self.order, {m: s * c for m, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GradedSeries):
            return self.scale(other)
        self._check(other)
        mask = self.odd_mask
        out: Dict[Monomial, Scalar] = {}
        N = self.order
        for m, c in self._terms.items():
            dm = sum(m)
            for n, e in other._terms.items():
                if dm + sum(n) > N:
                    continue
                s = monomial_product_sign(m, n, mask)
                if s == 0:
                    continue
                k = tuple(a + b for a, b in zip(m, n))
                out[k] = out.get(k, 0) + s * c * e
        return GradedSeries(self.ring, N, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.ring == other.ring and self.order == other.order and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, self.order, frozenset(self._terms.items())))

    def diff(self, i: int) -> "GradedSeries":
        """Left partial derivative in the i-th variable (order kept, top degree empty)."""
        mask = self.odd_mask
        out: Dict[Monomial, Scalar] = {}
        for m, c in self._terms.items():
            r = derivative_of_monomial(m, i, mask)
            if r is None:
                continue
            f, k = r
            out[k] = out.get(k, 0) + f * c
        return GradedSeries(self.ring, self.order, out)

    def restrict(self, keep: Sequence[int]) -> "GradedSeries":
        """Set every variable outside ``keep`` to zero and drop it from the ring."""
        keep = list(keep)
        ring = [self.ring[i] for i in keep]
        out = {}
        for m, c in self._terms.items():
            if any(m[i] for i in range(len(m)) if i not in keep):
                continue
            out[tuple(m[i] for i in keep)] = c
        return GradedSeries(ring, self.order, out)

    def evaluate_zero(self):
        return self._terms.get((0,) * len(self.ring), 0)

    def __repr__(self):
        return f"GradedSeries({self.to_string()}, N={self.order})"

    def to_string(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            mon = "*".join(f"{v.name}^{e}" if e > 1 else v.name for v, e in zip(self.ring, m) if e)
            cs = fraction_str(c) if isinstance(c, Fraction) else repr(c)
            parts.append(f"({cs})*{mon}" if mon else f"({cs})")
        return " + ".join(parts)
