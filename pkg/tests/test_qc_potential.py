from fractions import Fraction as F

import pytest

from frobkit import qc_potential as qc
from frobkit.graded_core import GradedSeries, GradedVariable
from frobkit.qc_potential import QCPotential, QCSeries

# rational plane curve counts through 3d - 1 points
PLANE_CURVES = [1, 1, 12, 620, 87304, 26312976]


def test_generator_matches_known_counts():
    _, info = qc.p2_generate(6)
    assert info["numbers"] == PLANE_CURVES


def test_reference_recursion():
    assert qc.kontsevich_numbers(6) == PLANE_CURVES


def test_degree_one_only():
    _, info = qc.p2_generate(1)
    assert info["numbers"] == [1]


def test_seed_scales_answers():
    _, info = qc.p2_generate(3, seed=F(2))
    # N_d scales like seed^d because q can absorb the factor
    assert info["numbers"] == [2, 4, 12 * 8]


def test_report():
    r = qc.p2_report(4)
    assert r["pass"] and r["N"] == ["1", "1", "12", "620"]
    assert r["small_quantum"]["x1*x2"] == ["1 q^[1] x0"]
    assert r["small_quantum"]["x2*x2"] == ["1 q^[1] x1"]
    assert r["cup"]["1,1"] == ["0", "0", "1"]


def test_wrong_number_breaks_associativity():
    pot = qc.p2_potential([1, 1, 13], 3)
    r = qc.wdvv_check(pot.full(), pot.metric, order=3)
    assert not r["pass"]


def test_split_and_divisor():
    pot, _ = qc.p2_generate(4)
    assert qc.split_check(pot)["pass"]
    ext = qc.divisor_extend(qc.correlator_table(pot, 8), pot.divisors, pot.rank)
    assert ext["pass"]
    two = {k: v for k, v in ext["table"].items() if len(k[1]) == 2}
    assert two[((1,), (2, 2))] == 1


def test_inhomogeneous_rejected():
    bad = QCSeries(3, (1,), 2, {((1,), (0, 0, 3)): F(1)})
    with pytest.raises(ValueError):
        QCPotential(qc.P2_NAMES, (1, 0, -1), 0, (1,), (3,), [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
                    qc.p2_classical(2), bad)


def test_zero_class_rejected_in_quantum_part():
    bad = QCSeries(3, (1,), 2, {((0,), (0, 0, 1)): F(1)})
    with pytest.raises(ValueError):
        QCPotential(qc.P2_NAMES, (1, 0, -1), 0, (1,), (3,), [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
                    qc.p2_classical(2), bad)


def test_divisor_derivative_includes_class():
    s = QCSeries(2, (1,), 3, {((2,), (0, 1)): F(1), ((0,), (0, 2)): F(1)})
    ds = s.diff(1)
    # q^2 e^(2 x1) x1 + x1^2
    assert ds.terms == {((2,), (0, 0)): F(1), ((2,), (0, 1)): F(2), ((0,), (0, 1)): F(2)}


def test_series_product():
    a = QCSeries(2, (1,), 3, {((1,), (1, 0)): F(1)})
    b = QCSeries(2, (1,), 3, {((1,), (0, 1)): F(2)})
    assert (a * b).terms == {((2,), (1, 1)): F(2)}
    assert (a * a * a * a).terms == {}


def test_restrict_p2_unchanged():
    pot, _ = qc.p2_generate(3)
    phi = pot.full()
    out, rep = qc.hm_restrict(phi, pot.metric, pot.spectrum, pot.D)
    assert rep["pass"] and rep["unchanged"] and out == phi


def test_restrict_drops_half_integral():
    ring = tuple(GradedVariable(n) for n in ("x0", "x1", "x2", "y1", "y2"))
    phi = GradedSeries(ring, 6, {(2, 0, 1, 0, 0): F(1, 2), (1, 2, 0, 0, 0): F(1, 2), (1, 0, 0, 1, 1): F(1)})
    g = [[0, 0, 1, 0, 0], [0, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, 0, 1], [0, 0, 0, 1, 0]]
    out, rep = qc.hm_restrict(phi, g, (1, 0, -1, F(1, 2), F(-1, 2)), 0)
    assert rep["dropped"] == [3, 4] and rep["pass"]
    assert out.terms == {(2, 0, 1): F(1, 2), (1, 2, 0): F(1, 2)}


def test_restrict_rejects_fractional_D():
    pot, _ = qc.p2_generate(2)
    with pytest.raises(ValueError):
        qc.hm_restrict(pot.full(), pot.metric, pot.spectrum, F(1, 2))
