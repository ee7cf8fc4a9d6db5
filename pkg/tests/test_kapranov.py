import pytest

from associahedra.poset import is_isomorphism
from associahedra.tiling import LabeledDiagram, cut_at_infinity, orbit, verify_kapranov
from associahedra.tiling.diagrams import CIRCLE, PATH
from associahedra.tiling.kapranov import explicit_map


def test_cut_at_infinity():
    d = LabeledDiagram(CIRCLE, (4, 2, 0, 3, 1), [(0, 2)])
    c = cut_at_infinity(d)
    assert c.kind == PATH and c.labels == (2, 0, 3, 1)
    assert c.brackets == ((1, 3),)  # complement of the arc through infinity
    with pytest.raises(ValueError):
        cut_at_infinity(LabeledDiagram(PATH, (0, 1, 2), []))


@pytest.mark.parametrize("n,tops", [(1, 3), (2, 12), (3, 60)])
def test_minimal_complexes_isomorphic(n, tops):
    r = verify_kapranov(n)
    assert r.isomorphic
    assert r.top_cells == (tops, tops)
    assert r.f_vectors[0] == r.f_vectors[1]
    assert r.oracle_isomorphic and r.oracle_agrees
    assert len(r.mapping) == sum(r.f_vectors[0])


def test_cut_map_is_constant_on_twist_classes(complexes):
    moduli, sphere = complexes("moduli", 2), complexes("pv", 2)
    for cell in moduli.cells:
        images = {sphere.class_of[cut_at_infinity(m)] for m in orbit(cell.key)}
        assert len(images) == 1


def test_explicit_map_preserves_incidence(complexes):
    moduli, sphere = complexes("moduli", 3), complexes("pv", 3)
    mapping, problems = explicit_map(moduli, sphere)
    assert not problems
    assert is_isomorphism(moduli.poset(), sphere.poset(), mapping)


def test_maximal_not_isomorphic():
    r = verify_kapranov(2, "maximal")
    assert not r.isomorphic
    assert r.oracle_isomorphic is False and r.oracle_agrees
    assert r.f_vectors == ((21, 42, 12), (18, 36, 12))
    assert "NOT isomorphic" in r.summary()
