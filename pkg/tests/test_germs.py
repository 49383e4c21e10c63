import cmath

import pytest

from frobkit.germs import (CollisionError, SemisimpleGerm, compare_germs, dumps_germ, germ_from_projective,
                           identity_germ, loads_germ, tensor)


def close(a, b, tol=1e-12):
    return abs(complex(a) - complex(b)) < tol


def test_projective_line():
    g = germ_from_projective(2)
    assert sorted(round(x.real, 12) for x in g.u) == [-2.0, 2.0]
    assert sorted(round(x.real, 12) for x in g.eta) == [-0.5, 0.5]
    assert close(g.v[0][1], 0.5)
    assert g.reciprocity_defect() < 1e-12


def test_identity_germ_is_unit_for_tensor():
    g = germ_from_projective(3)
    t = tensor(g, identity_germ())
    assert compare_germs(t, g).isomorphic


def test_tensor_sizes_and_values():
    a, b = germ_from_projective(2), germ_from_projective(3, x0=0.3)
    t = tensor(a, b)
    assert t.size == 6
    assert close(t.u[4], a.u[1] + b.u[1])
    assert close(t.eta[4], a.eta[1] * b.eta[1])
    # entries with i != k and j != l vanish
    assert t.v[0][4] == 0
    assert close(t.v[0][1], b.v[0][1])
    assert close(t.v[0][3], a.v[0][1])


def test_tensor_collision():
    g = germ_from_projective(2)
    with pytest.raises(CollisionError):
        tensor(g, g)


def test_compare_finds_permutation():
    g = germ_from_projective(4, x1=0.2)
    perm = (2, 0, 3, 1)
    m = compare_germs(g, g.relabel(perm))
    assert m.isomorphic and m.max_dev < 1e-12
    assert [perm[m.permutation[i]] for i in range(4)] == [0, 1, 2, 3]


def test_compare_detects_difference():
    g = germ_from_projective(3)
    h = g.shifted(1e-3)
    assert not compare_germs(g, h).isomorphic


def test_roundtrip():
    g = germ_from_projective(3, x0=0.1, x1=-0.4)
    assert loads_germ(dumps_germ(g)) == g


def test_inconsistent_sizes():
    with pytest.raises(ValueError):
        SemisimpleGerm((0, 1), (1,), ((0, 0), (0, 0)))


def test_projective_reciprocity():
    for n in range(2, 6):
        assert germ_from_projective(n, x1=cmath.pi / 7).reciprocity_defect() < 1e-12
