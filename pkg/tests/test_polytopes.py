import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from associahedra.bracketings import associahedron_frame, f_vector
from associahedra.circle import padded, partitions_at_most
from associahedra.polytopes import (
    POINT,
    FaceRef,
    SimplePolytope,
    TruncationSchedule,
    build_circle_product,
    build_interval_simplex,
    collision_faces,
    face_lattice,
    facet_census,
    iterated_truncation,
    labeled_isomorphism,
    product,
    simplex,
    truncate_face,
    truncated_matches_associahedron,
)
from associahedra.poset import poset_isomorphic


def test_simplex():
    assert simplex(0) is POINT
    assert simplex(2).f_vector() == (1, 3, 3)
    assert simplex(3).f_vector() == (1, 4, 6, 4)
    with pytest.raises(ValueError):
        simplex(-1)


def test_product_of_simplices():
    prism = product(simplex(2), simplex(1))
    assert prism.f_vector() == (1, 5, 9, 6)
    assert product(POINT, simplex(2)).f_vector() == simplex(2).f_vector()
    assert prism.is_simple()


def test_truncating_a_vertex_of_a_triangle_gives_a_square():
    t = simplex(2)
    sq = truncate_face(t, FaceRef({0, 1}))
    assert sq.f_vector() == (1, 4, 4)
    with pytest.raises(ValueError):
        truncate_face(t, FaceRef({0}))


def test_truncating_an_edge_of_a_tetrahedron():
    p = truncate_face(simplex(3), FaceRef({0, 1}))
    # new facet is an edge times an interval
    assert p.f_vector() == (1, 5, 9, 6)


def test_vertices_must_lie_on_dim_facets():
    with pytest.raises(ValueError):
        SimplePolytope(2, 3, [frozenset({0})])


def test_schedule_order_enforced():
    with pytest.raises(ValueError):
        TruncationSchedule([[FaceRef({0, 1})], [FaceRef({0, 1, 2})]])


@pytest.mark.parametrize("n", range(1, 6))
def test_interval_simplex_truncates_to_associahedron(n):
    p = build_interval_simplex(n)
    t = iterated_truncation(p, collision_faces(p))
    assert t.f_vector() == f_vector(associahedron_frame(n + 2))
    assert labeled_isomorphism(t) is not None
    assert truncated_matches_associahedron(t)


@pytest.mark.parametrize("part", [padded(p) for k in range(4, 7) for p in partitions_at_most(k - 2)])
def test_circle_product_truncates_to_associahedron(part):
    p = build_circle_product(part)
    t = iterated_truncation(p, collision_faces(p))
    k = sum(part) + 2
    assert t.f_vector() == f_vector(associahedron_frame(k))
    assert labeled_isomorphism(t) is not None
    assert truncated_matches_associahedron(t)


def test_k5_from_prism_and_cube():
    for part in [(2, 1, 0), (1, 1, 1)]:
        p = build_circle_product(part)
        t = iterated_truncation(p, collision_faces(p))
        assert t.f_vector() == (1, 9, 21, 14)


def test_k6_facet_census():
    p = build_circle_product((4, 0, 0))
    t = iterated_truncation(p, collision_faces(p))
    assert facet_census(t) == {(1, 9, 21, 14): 7, (1, 7, 15, 10): 7}


def test_wrong_schedule_is_not_an_associahedron():
    # truncating only the lowest-dimensional collisions stops short of K_5
    p = build_circle_product((3, 0, 0))
    sched = collision_faces(p)
    partial = iterated_truncation(p, TruncationSchedule(sched.groups[:1]))
    assert poset_isomorphic(face_lattice(partial), face_lattice(
        iterated_truncation(p, sched))) is None


def test_empty_partition_rejected():
    with pytest.raises(ValueError):
        build_circle_product((0, 0, 0))


def test_json_export():
    data = json.loads(build_circle_product((1, 1, 0)).to_json())
    assert data["dim"] == 2 and len(data["facets"]) == 4
    assert all(len(f["label"]) == 3 for f in data["facets"])


def _random_polytope(draw):
    parts = draw(st.lists(st.integers(1, 3), min_size=1, max_size=3))
    p = POINT
    for k in parts:
        p = product(p, simplex(k))
    return p


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_truncation_preserves_simplicity(data):
    p = _random_polytope(data.draw)
    faces = [f for f in p.faces() if 2 <= len(f) <= p.dim]
    if not faces:
        return
    f = data.draw(st.sampled_from(sorted(faces, key=sorted)))
    t = truncate_face(p, FaceRef(f))
    assert t.is_simple()
    assert t.facet_count == p.facet_count + 1
    # the new facet is F x simplex(k - 1)
    k = len(f)
    lattice = face_lattice(t)
    new_facet = lattice.down_set(frozenset([p.facet_count])).rank_counts()
    face_poly = face_lattice(p).down_set(frozenset(f))
    expected = product_counts(face_poly.rank_counts(), k - 1)
    assert new_facet == expected


def product_counts(face_counts, m):
    """Face counts by codim of F x simplex(m) from those of F (codim in F, F first)."""
    simplex_counts = simplex(m).f_vector() if m else (1,)
    out = [0] * (len(face_counts) + len(simplex_counts) - 1)
    for i, a in enumerate(face_counts):
        for j, b in enumerate(simplex_counts):
            out[i + j] += a * b
    return tuple(out)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_truncation_commutes_for_same_dimension(data):
    """Faces of one schedule group can be cut in any order."""
    parts = data.draw(st.sampled_from([(3, 0, 0), (2, 1, 0), (1, 1, 1), (2, 2, 0), (4, 0, 0)]))
    p = build_circle_product(parts)
    sched = collision_faces(p)
    seed = data.draw(st.integers(0, 10 ** 6))
    rng = random.Random(seed)
    shuffled = []
    for g in sched.groups:
        g = list(g)
        rng.shuffle(g)
        shuffled.append(g)
    a = iterated_truncation(p, sched)
    b = iterated_truncation(p, TruncationSchedule(shuffled))
    assert a.f_vector() == b.f_vector()
    assert labeled_isomorphism(b) is not None
    assert poset_isomorphic(face_lattice(a), face_lattice(b)) is not None


def test_disjoint_truncations_commute_exactly():
    p = simplex(3)
    f, g = FaceRef({0, 1, 2}), FaceRef({0, 1, 3})  # two vertices
    ab = truncate_face(truncate_face(p, f), g)
    ba = truncate_face(truncate_face(p, g), f)
    swap = {4: 5, 5: 4}
    renamed = {frozenset(swap.get(x, x) for x in v) for v in ba.vertices}
    assert ab.vertices == renamed
