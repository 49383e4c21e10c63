from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from frobkit.graded_core import (ComplexPolynomial, GradedSeries, GradedVariable, RingMismatchError,
                                 as_fraction, laurent_compose, laurent_invert, laurent_nth_root,
                                 monomial_parity, poly_roots)

RING = (GradedVariable("t0"), GradedVariable("t1"), GradedVariable("th0", odd=True),
        GradedVariable("th1", odd=True))
ORDER = 4

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
monos = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1), st.integers(0, 1))


@st.composite
def series(draw, parity=None):
    terms = draw(st.dictionaries(monos, small, max_size=5))
    if parity is not None:
        terms = {m: c for m, c in terms.items() if monomial_parity(m, [False, False, True, True]) == parity}
    return GradedSeries(RING, ORDER, terms)


def test_roots_of_simple_quadratic():
    roots = poly_roots(ComplexPolynomial.from_highest([3, 0, -3]))
    assert [round(r.value.real, 12) for r in roots] == [1.0, -1.0]
    assert not any(r.multiple for r in roots)


def test_triple_root_is_flagged():
    roots = poly_roots(ComplexPolynomial.from_highest([1, 0, 0, 0]))
    assert all(r.multiple for r in roots)


def test_roots_match_sympy():
    coeffs = [1, -2, 3, 1, -5]
    want = [complex(r) for r in sp.Poly(coeffs, sp.Symbol("z")).nroots(n=30)]
    got = [r.value for r in poly_roots(ComplexPolynomial.from_highest(coeffs))]
    for w in want:
        assert min(abs(w - g) for g in got) < 1e-9


def test_nth_root_quadratic():
    a1 = Fraction(3)
    w = laurent_nth_root(ComplexPolynomial((a1, 0, 1)), 4)
    assert w.coefficient(1) == 1
    assert w.coefficient(0) == 0
    assert w.coefficient(-1) == a1 / 2


def test_nth_root_against_sympy():
    s = sp.Symbol("s")
    w = laurent_nth_root(ComplexPolynomial((Fraction(-5), Fraction(2), 0, 1)), 6)
    # z * (1 + 2 s^2 - 5 s^3)^(1/3) with s = 1/z
    ref = sp.series((1 + 2 * s ** 2 - 5 * s ** 3) ** sp.Rational(1, 3), s, 0, 6).removeO()
    for k in range(6):
        assert sp.Rational(ref.coeff(s, k)) == sp.Rational(w.coeffs[k].numerator, w.coeffs[k].denominator)


def test_invert_then_compose_is_identity():
    w = laurent_nth_root(ComplexPolynomial((Fraction(1), Fraction(-4), Fraction(3), 0, 1)), 7)
    z = laurent_invert(w)
    ident = laurent_compose(w, z, 7)
    assert ident.coeffs[0] == 1 and all(c == 0 for c in ident.coeffs[1:])


def test_as_fraction():
    assert as_fraction("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        as_fraction(0.5)


def test_odd_square_vanishes():
    th = GradedSeries.variable(RING, ORDER, 2)
    assert (th * th).is_zero()


def test_odd_variables_anticommute():
    a = GradedSeries.variable(RING, ORDER, 2)
    b = GradedSeries.variable(RING, ORDER, 3)
    assert a * b == -(b * a)


def test_ring_mismatch():
    other = GradedSeries.variable(RING[:2], ORDER, 0)
    with pytest.raises(RingMismatchError):
        GradedSeries.variable(RING, ORDER, 0) + other


def test_odd_derivative_sign():
    th0 = GradedSeries.variable(RING, ORDER, 2)
    th1 = GradedSeries.variable(RING, ORDER, 3)
    assert (th0 * th1).diff(3) == -th0
    assert (th0 * th1).diff(2) == th1


@settings(max_examples=60, deadline=None)
@given(series(), series(), series())
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 1), st.integers(0, 1), st.data())
def test_supercommutative(p, q, data):
    a = data.draw(series(p))
    b = data.draw(series(q))
    assert a * b == (b * a).scale((-1) ** (p * q))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 1), st.integers(0, 3), st.data())
def test_leibniz(p, i, data):
    a = data.draw(series(p))
    b = data.draw(series())
    sign = -1 if (RING[i].odd and p) else 1
    lhs = (a * b).diff(i).truncated(ORDER - 1)
    rhs = (a.diff(i) * b + (a * b.diff(i)).scale(sign)).truncated(ORDER - 1)
    assert lhs == rhs
