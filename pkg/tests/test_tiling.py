from collections import Counter
from itertools import islice, permutations

import pytest

from associahedra.bracketings import associahedron_frame, f_vector, face_poset
from associahedra.poset import poset_isomorphic
from associahedra.tiling import (
    LabeledDiagram,
    Moduli,
    ProjectiveSphere,
    build_complex,
    chamber_census,
    chamber_counts_equal,
    classify_surface,
    describe_census,
    enumerate_tiles,
    euler_characteristic,
    incidence_multiplicities,
    orbit,
    polygon_census,
    reflect,
    space_for,
    twist,
    twist_class,
    verify_right_angled,
)
from associahedra.tiling.complexes import complex_from_polygons, labeled_diagrams
from associahedra.tiling.diagrams import (
    CIRCLE,
    PATH,
    map_block,
    mirror_perm,
    permute_labels,
    shift_block,
    validate,
)


def image_of_bracket(d, b):
    """Where bracket ``b`` itself lands after twisting along it."""
    perm = mirror_perm(d.kind, d.size, b)
    _, shift = permute_labels(d.kind, d.labels, perm)
    return shift_block(d.kind, d.size, map_block(d.kind, d.size, b, perm), shift)


def all_diagrams(n):
    yield from labeled_diagrams(ProjectiveSphere(n))
    yield from labeled_diagrams(Moduli(n + 3))


def test_twist_swaps_pair():
    d = LabeledDiagram(PATH, (0, 1, 2, 3), [(1, 2)])
    assert twist(d, (1, 2)).labels == (0, 2, 1, 3)
    with pytest.raises(ValueError):
        twist(d, (0, 1))


def test_twist_mirrors_inner_bracket():
    d = LabeledDiagram(PATH, (0, 1, 2, 3, 4), [(0, 3), (0, 1)])
    t = twist(d, (0, 3))
    assert t.labels == (3, 2, 1, 0, 4)
    assert set(t.brackets) == {(0, 3), (2, 3)}


def test_circle_twist_through_infinity_renormalises():
    # arc on positions {0, 1} holds infinity and the free label 2
    d = LabeledDiagram(CIRCLE, (4, 2, 0, 3, 1), [(0, 2)])
    validate(d)
    t = twist(d, (0, 2))
    validate(t)
    assert t.labels == (4, 0, 3, 1, 2)
    assert t.brackets == ((4, 2),)
    assert twist(t, (4, 2)) == d


@pytest.mark.parametrize("n", [1, 2, 3])
def test_twist_is_a_valid_involution(n):
    for d in all_diagrams(n):
        for b in d.brackets:
            t = twist(d, b)
            validate(t)
            b2 = image_of_bracket(d, b)
            assert b2 in t.brackets
            assert twist(t, b2) == d


def test_twist_involution_n4_path():
    for d in islice(labeled_diagrams(ProjectiveSphere(4)), 3000):
        for b in d.brackets:
            assert twist(twist(d, b), b) == d


def test_reflection():
    d = LabeledDiagram(PATH, (0, 1, 2, 3), [(0, 1)])
    assert reflect(d) == LabeledDiagram(PATH, (3, 2, 1, 0), [(2, 3)])
    with pytest.raises(ValueError):
        reflect(LabeledDiagram(CIRCLE, (3, 0, 2, 1), []))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_orbit_sizes_divide_powers_of_two(n):
    for space in (ProjectiveSphere(n), Moduli(n + 3)):
        seen = set()
        for d in labeled_diagrams(space):
            if d in seen:
                continue
            members = orbit(d)
            assert not (seen & set(members))  # orbits partition the diagrams
            seen.update(members)
            bound = 2 ** (d.codim + (1 if d.kind == PATH else 0))
            assert bound % len(members) == 0


def test_codim0_path_orbit_is_reflection_pair():
    c = twist_class(LabeledDiagram(PATH, (1, 0, 2, 3), []))
    assert c.orbit_size == 2
    assert c.canonical.labels == (1, 0, 2, 3)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tile_counts(n):
    from math import factorial

    assert len(enumerate_tiles(ProjectiveSphere(n))) == factorial(n + 2) // 2
    assert len(enumerate_tiles(Moduli(n + 3))) == factorial(n + 2) // 2
    assert chamber_counts_equal(n)


def test_circle_of_three_segments():
    # n = 1: brute force, three K_3 segments close up into a circle
    assert len(list(permutations(range(3)))) // 2 == 3
    assert len(enumerate_tiles(Moduli(4))) == 3


def test_moduli5_chamber_census():
    assert chamber_census(Moduli(5)) == Counter({(2,): 6, (1, 1): 6})


def test_space_for_and_limit():
    assert space_for("pv", 2) == ProjectiveSphere(2)
    assert space_for("moduli", 2) == Moduli(5)
    with pytest.raises(ValueError):
        space_for("torus", 2)
    with pytest.raises(ValueError):
        build_complex(ProjectiveSphere(5))
    with pytest.raises(ValueError):
        build_complex(ProjectiveSphere(3), "maximal")


@pytest.mark.parametrize("kind", ["pv", "moduli"])
def test_n2_minimal_surfaces(complexes, kind):
    cx = complexes(kind, 2)
    assert cx.f_vector() == (15, 30, 12)
    assert euler_characteristic(cx) == -3
    s = classify_surface(cx)
    assert s.closed and not s.orientable and s.chi == -3
    assert s.name == "#^5 RP^2"
    assert polygon_census(cx) == {5: 12}
    assert verify_right_angled(cx)
    dims = {c.id: c.dim for c in cx.cells}
    mult = incidence_multiplicities(cx)
    assert {mult[c] for c in mult if dims[c] == 1} == {2}  # edges in pairs
    assert {mult[c] for c in mult if dims[c] == 0} == {4}  # vertices in fours


@pytest.mark.parametrize("kind", ["pv", "moduli"])
def test_n3_minimal(complexes, kind):
    cx = complexes(kind, 3)
    assert cx.f_vector() == (105, 315, 270, 60)
    assert euler_characteristic(cx) == 0
    assert verify_right_angled(cx)


def test_n1_is_a_circle(complexes):
    for kind in ("pv", "moduli"):
        cx = complexes(kind, 1)
        assert cx.f_vector() == (3, 3)
        assert verify_right_angled(cx)


def test_maximal_n2(complexes):
    sphere = complexes("pv", 2, "maximal")
    moduli = complexes("moduli", 2, "maximal")
    assert polygon_census(sphere) == {6: 12}
    assert polygon_census(moduli) == {6: 6, 8: 6}
    assert describe_census(polygon_census(moduli)) == "6 hexagons, 6 octagons"
    assert euler_characteristic(sphere) == -6 and euler_characteristic(moduli) == -9
    for cx in (sphere, moduli):
        s = classify_surface(cx)
        assert s.closed and not s.orientable
        assert verify_right_angled(cx)
    assert classify_surface(sphere).name == "#^8 RP^2"


def test_polygon_gluing_reproduces_minimal_twist_complex():
    from associahedra.tiling import build_polygon_complex

    for space in (ProjectiveSphere(2), Moduli(5)):
        glued = build_polygon_complex(space, "minimal")
        twisted = build_complex(space)
        assert glued.f_vector() == twisted.f_vector()
        assert poset_isomorphic(glued.poset(), twisted.poset()) is not None


@pytest.mark.parametrize("kind,n", [("pv", 2), ("moduli", 2), ("pv", 3), ("moduli", 3)])
def test_each_tile_is_an_associahedron(complexes, kind, n):
    cx = complexes(kind, n)
    target = face_poset(associahedron_frame(n + 2))
    poset = cx.poset()
    for top in cx.top_cells():
        sub = poset.down_set(top.id)
        assert sub.rank_counts() == tuple(reversed(f_vector(associahedron_frame(n + 2))))
    # full isomorphism check on a few tiles
    for top in cx.top_cells()[:5]:
        assert poset_isomorphic(poset.down_set(top.id), _dim_graded(target)) is not None


def _dim_graded(p):
    """Regrade a codim-ranked poset by dimension so ranks line up with cells."""
    from associahedra.poset import GradedPoset

    top = max(p.rank.values())
    return GradedPoset.build(p.elements, {e: top - r for e, r in p.rank.items()}, p.covers)


@pytest.mark.parametrize("kind,n", [("pv", 2), ("moduli", 2), ("pv", 3), ("moduli", 3)])
def test_adjacency_is_one_twist(complexes, kind, n):
    """Two tiles sharing a wall differ by the twist along that wall's bracket."""
    cx = complexes(kind, n)
    walls = [c for c in cx.cells if c.dim == n - 1]
    for w in walls:
        (b,) = w.key.brackets
        here = cx.class_of[w.key.with_brackets(())]
        there = cx.class_of[twist(w.key, b).with_brackets(())]
        tiles = {t for t, slots in cx.tile_faces.items() if w.id in slots}
        assert tiles == {here, there}
        assert here != there


def test_incidence_independent_of_representative(complexes):
    """Downward covers from every member agree with upward covers from every member."""
    cx = complexes("moduli", 3)
    down = set()
    for d, cid in cx.class_of.items():
        for b in d.brackets:
            down.add((cid, cx.class_of[d.with_brackets(tuple(x for x in d.brackets if x != b))]))
    assert down == set(cx.covers)
    # canonical representatives alone miss some of them
    canon = set()
    for c in cx.cells:
        for b in c.key.brackets:
            canon.add((c.id, cx.class_of[c.key.with_brackets(tuple(x for x in c.key.brackets if x != b))]))
    assert canon <= down


def test_torus_square():
    # a, b glued as a b a^-1 b^-1 with one vertex
    edge_ends = {"a": ("v", "v"), "b": ("v", "v")}
    cx = complex_from_polygons([[("a", 1), ("b", 1), ("a", -1), ("b", -1)]], edge_ends, "torus")
    s = classify_surface(cx)
    assert s.closed and s.orientable and s.chi == 0 and s.name == "T^2"


def test_projective_plane_square():
    edge_ends = {"a": ("v", "w"), "b": ("w", "v")}
    cx = complex_from_polygons([[("a", 1), ("b", 1), ("a", 1), ("b", 1)]], edge_ends)
    s = classify_surface(cx)
    assert s.closed and not s.orientable and s.chi == 1


def test_single_pentagon_with_free_boundary():
    edge_ends = {f"e{i}": (f"v{i}", f"v{(i + 1) % 5}") for i in range(5)}
    cx = complex_from_polygons([[(f"e{i}", 1) for i in range(5)]], edge_ends)
    assert euler_characteristic(cx) == 1
    assert not classify_surface(cx).closed
    assert not verify_right_angled(cx)


def test_words_must_close():
    with pytest.raises(ValueError):
        complex_from_polygons([[("a", 1), ("b", 1)]], {"a": ("u", "v"), "b": ("w", "u")})


def test_exports(complexes):
    import json

    cx = complexes("pv", 2)
    data = json.loads(cx.to_json())
    assert data["dim"] == 2 and len(data["cells"]) == 57
    assert all(len(pair) == 2 for pair in data["incidence"])
    assert cx.f_vector_csv().splitlines()[1] == "PV^2,15,30,12,-3"
    dot = cx.dual_graph_dot()
    assert dot.count(" -- ") == 30
