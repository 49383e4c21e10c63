from fractions import Fraction as F

import sympy as sp
from hypothesis import given, settings, strategies as st

from frobkit import linalg as la

entries = st.integers(-3, 3).map(F)


@st.composite
def matrices(draw, square=False):
    r = draw(st.integers(1, 5))
    c = r if square else draw(st.integers(1, 5))
    return [[draw(entries) for _ in range(c)] for _ in range(r)]


def to_sympy(m):
    return sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in row] for row in m])


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_and_nullspace(m):
    assert la.rank(m) == to_sympy(m).rank()
    ns = la.nullspace(m)
    assert len(ns) == len(m[0]) - la.rank(m)
    for v in ns:
        assert not any(la.matvec(m, v))


@settings(max_examples=80, deadline=None)
@given(matrices(square=True))
def test_determinant_and_inverse(m):
    det = la.determinant(m)
    assert sp.Rational(det.numerator, det.denominator) == to_sympy(m).det()
    if det:
        assert la.matmul(m, la.inverse(m)) == la.identity(len(m))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solver(m, data):
    x = [data.draw(entries) for _ in range(len(m[0]))]
    b = la.matvec(m, x)
    y = la.LinearSolver(m).solve(b)
    assert y is not None and la.matvec(m, y) == b


def test_intersection():
    u = [[F(1), F(0), F(0)], [F(0), F(1), F(0)]]
    w = [[F(0), F(1), F(1)], [F(0), F(0), F(1)]]
    got = la.intersect(u, w, 3)
    assert len(got) == 1 and la.in_span([F(0), F(1), F(0)], got)
