from fractions import Fraction as F

import pytest

from frobkit import spectrum as S


def test_an_profile():
    p = S.an_profile(3)
    assert p.d == F(1, 2)
    assert [q for q, _ in p.entries] == [0, F(1, 4), F(1, 2)]
    assert p.is_self_dual()


def test_tensor_of_two_a2():
    p = S.tensor_profile(S.an_profile(2), S.an_profile(2))
    assert p.d == F(2, 3)
    assert dict(p.entries) == {F(0): 1, F(1, 3): 2, F(2, 3): 1}


def test_tensor_dimension_is_product():
    p = S.an_sum_profile([2, 3, 4])
    assert p.total == 2 * 3 * 4
    assert p.is_self_dual()


def test_cubic_curve():
    assert S.betti((2, 2, 2)) == [1, 1]


@pytest.mark.parametrize("ns, want", [((3, 3, 3, 3), [1, 19, 1]), ((4, 4, 4, 4, 4), [1, 101, 101, 1])])
def test_known_betti(ns, want):
    h = S.betti(ns)
    assert h == want
    assert S.poincare_check(h)


def test_formula_matches_enumeration_small():
    for ns in S.integral_instances(2000):
        assert S.betti(ns) == S.betti_bruteforce(ns), ns


def test_integral_instances_are_integral():
    inst = S.integral_instances(10 ** 4)
    assert inst and all(S.integrality(ns)[1] for ns in inst)


def test_non_integral_rejected_by_hm():
    with pytest.raises(ValueError):
        S.hm_profile(S.tensor_profile(S.an_profile(2), S.an_profile(2)))


def test_hm_keeps_integer_entries():
    p = S.an_sum_profile([3, 3, 3, 3])
    hm = S.hm_profile(p)
    assert [m for _, m in hm.entries] == [1, 19, 1]


def test_qc_profile_p2():
    p = S.qc_profile(2, [1, 1, 1])
    assert p.d == 2
    assert p.total == 3 and p.is_self_dual()


def test_bad_n():
    with pytest.raises(ValueError):
        S.integrality((1, 2))


def test_report_is_plain():
    r = S.spectrum_report((3, 3, 3, 3))
    assert r["d"] == "2" and r["integral"] and r["poincare"]
