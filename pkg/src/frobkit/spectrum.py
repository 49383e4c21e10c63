"""Spectrum arithmetic: A_n profiles, tensor profiles, Betti counts of Gepner
type sums, Poincare duality and the integral part of a profile."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm, prod
from typing import Dict, List, Optional, Sequence, Tuple

from .graded_core import fraction_str


@dataclass(frozen=True)
class SpectrumProfile:
    d: Fraction
    entries: Tuple[Tuple[Fraction, int], ...]
    flat_euler_part_zero: bool = True

    def __post_init__(self):
        merged: Dict[Fraction, int] = {}
        for q, mult in self.entries:
            if mult < 1:
                raise ValueError("multiplicities must be positive")
            q = Fraction(q)
            merged[q] = merged.get(q, 0) + mult
        object.__setattr__(self, "d", Fraction(self.d))
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def multiplicity(self, q) -> int:
        return dict(self.entries).get(Fraction(q), 0)

    def is_self_dual(self) -> bool:
        """q <-> d - q pairing of the multiset."""
        ms = dict(self.entries)
        return all(ms.get(self.d - q, 0) == m for q, m in ms.items())

    def to_dict(self) -> dict:
        return {
            "d": fraction_str(self.d),
            "entries": [[fraction_str(q), m] for q, m in self.entries],
            "flat_euler_part_zero": self.flat_euler_part_zero,
        }


def an_profile(n: int) -> SpectrumProfile:
    if n < 1:
        raise ValueError("n must be >= 1")
    return SpectrumProfile(Fraction(n - 1, n + 1), tuple((Fraction(i, n + 1), 1) for i in range(n)))


def tensor_profile(p1: SpectrumProfile, p2: SpectrumProfile) -> SpectrumProfile:
    acc: Counter = Counter()
    for q1, m1 in p1.entries:
        for q2, m2 in p2.entries:
            acc[q1 + q2] += m1 * m2
    return SpectrumProfile(p1.d + p2.d, tuple(acc.items()),
                           p1.flat_euler_part_zero and p2.flat_euler_part_zero)


def integrality(ns: Sequence[int]) -> Tuple[Fraction, bool]:
    if any(n < 2 for n in ns):
        raise ValueError("each n_i must be >= 2")
    d = sum((Fraction(n - 1, n + 1) for n in ns), Fraction(0))
    return d, d.denominator == 1


def level_counts(ns: Sequence[int]) -> Dict[Fraction, int]:
    """Number of tuples 0 <= i_k <= n_k - 1 at every level sum i_k/(n_k+1).

    Coefficient extraction from prod_k (1 + t^(L/(n_k+1)) + ...) over the
    common lattice L = lcm(n_k + 1).
    """
    L = lcm(*[n + 1 for n in ns]) if ns else 1
    poly = [1]
    for n in ns:
        step = L // (n + 1)
        new = [0] * (len(poly) + step * (n - 1))
        for e, c in enumerate(poly):
            if c:
                for i in range(n):
                    new[e + i * step] += c
        poly = new
    return {Fraction(e, L): c for e, c in enumerate(poly) if c}


def betti(ns: Sequence[int]) -> List[int]:
    """h^{2m} for m = 0..floor(d): tuples with sum i_k/(n_k+1) = m."""
    d, _ = integrality(ns)
    counts = level_counts(ns)
    top = d.numerator // d.denominator
    return [counts.get(Fraction(m), 0) for m in range(top + 1)]


def betti_bruteforce(ns: Sequence[int], limit: int = 10 ** 7) -> List[int]:
    """Direct enumeration of all index tuples, scaled to integers by lcm(n_k + 1)."""
    if prod(ns) > limit:
        raise ValueError("enumeration too large")
    d, _ = integrality(ns)
    top = d.numerator // d.denominator
    L = lcm(*[n + 1 for n in ns])
    steps = [L // (n + 1) for n in ns]
    out = [0] * (top + 1)
    for idx in product(*[range(n) for n in ns]):
        s = sum(i * w for i, w in zip(idx, steps))
        if s % L == 0 and s // L <= top:
            out[s // L] += 1
    return out


def integral_instances(max_product: int, max_n: int = 20, max_factors: int = 8) -> List[Tuple[int, ...]]:
    """Nondecreasing tuples with integral d and product of n_k at most ``max_product``."""
    out: List[Tuple[int, ...]] = []

    def rec(start, acc, p):
        if acc and integrality(acc)[1]:
            out.append(tuple(acc))
        if len(acc) == max_factors:
            return
        for n in range(start, max_n + 1):
            if p * n > max_product:
                break
            rec(n, acc + [n], p * n)

    rec(2, [], 1)
    return out


def poincare_check(h: Sequence[int]) -> bool:
    return list(h) == list(reversed(h))


def qc_profile(dim: int, betti_numbers: Sequence[int]) -> SpectrumProfile:
    if not betti_numbers or betti_numbers[0] != 1:
        raise ValueError("h^0 must be 1")
    return SpectrumProfile(Fraction(dim), tuple((Fraction(q), h) for q, h in enumerate(betti_numbers) if h))


def an_sum_profile(ns: Sequence[int]) -> SpectrumProfile:
    prof = SpectrumProfile(Fraction(0), ((Fraction(0), 1),))
    for n in ns:
        prof = tensor_profile(prof, an_profile(n))
    return prof


def hm_profile(p: SpectrumProfile, modulus: Optional[Fraction] = None) -> SpectrumProfile:
    """Keep the entries whose q lies in the progression modulus*Z (default Z)."""
    if p.d.denominator != 1:
        raise ValueError(f"d = {p.d} is not integral")
    step = Fraction(1) if modulus is None else Fraction(modulus)
    kept = tuple((q, m) for q, m in p.entries if (q / step).denominator == 1)
    return SpectrumProfile(p.d, kept, p.flat_euler_part_zero)


def spectrum_report(ns: Sequence[int]) -> dict:
    d, ok = integrality(ns)
    h = betti(ns)
    prof = an_sum_profile(ns)
    return {
        "d": fraction_str(d),
        "integral": ok,
        "betti": h,
        "poincare": poincare_check(h),
        "entries": prof.to_dict()["entries"],
    }
