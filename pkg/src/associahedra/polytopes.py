"""Combinatorial simple polytopes and face truncation.

A simple ``d``-polytope is stored by its vertex-facet incidence: facets are
integers ``0..m-1`` and every vertex is the frozenset of the ``d`` facets
containing it.  In a simple polytope every set of facets sharing a vertex
cuts out a face whose codimension is the size of the set, so faces are
exactly the subsets of vertex sets.

Facets may carry labels: brackets of a fixed-end path frame or arcs of a
circle frame.  Truncation only ever adds facets, so a face can be tracked
through later truncations by its original facet set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .bracketings import Bracket, PathBracketing, PathFrame, face_poset
from .circle import Arc, CircleBracketing, CircleFrame, arc_from_nodes, circle_to_path
from .poset import GradedPoset, poset_isomorphic


@dataclass(frozen=True)
class SimplePolytope:
    dim: int
    facet_count: int
    vertices: frozenset
    labels: tuple = None  # facet -> Bracket | Arc, or None when unlabeled
    frame: object = None  # PathFrame or CircleFrame owning the labels

    def __post_init__(self):
        verts = frozenset(frozenset(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        for v in verts:
            if len(v) != self.dim:
                raise ValueError(f"vertex {sorted(v)} lies on {len(v)} facets, expected {self.dim}")
            if not all(0 <= f < self.facet_count for f in v):
                raise ValueError(f"vertex {sorted(v)} names an unknown facet")
        used = set().union(*verts) if verts else set()
        if self.dim > 0 and len(used) != self.facet_count:
            raise ValueError("some facet contains no vertex")
        if self.labels is not None and len(self.labels) != self.facet_count:
            raise ValueError("one label per facet required")

    @property
    def labeled(self):
        return self.labels is not None

    def faces(self) -> set:
        """Facet sets of every face, the empty set standing for the polytope."""
        out = set()
        for v in self.vertices:
            vs = sorted(v)
            for k in range(len(vs) + 1):
                out.update(frozenset(c) for c in combinations(vs, k))
        return out

    def face_vertices(self, facet_set) -> list:
        s = frozenset(facet_set)
        return [v for v in self.vertices if s <= v]

    def f_vector(self) -> tuple:
        """Face counts by codimension, polytope first and vertices last."""
        counts = [0] * (self.dim + 1)
        for f in self.faces():
            counts[len(f)] += 1
        return tuple(counts)

    def is_simple(self) -> bool:
        return all(len(v) == self.dim for v in self.vertices)

    def label_of(self, facet_set):
        return frozenset(self.labels[f] for f in facet_set)

    def to_json(self) -> str:
        n = self.frame.num_nodes if isinstance(self.frame, CircleFrame) else None

        def dump(label):
            if label is None:
                return None
            if isinstance(label, Arc):
                return label.to_json(n)
            return list(label)

        facets = [
            {"id": f, "label": dump(self.labels[f]) if self.labels else None}
            for f in range(self.facet_count)
        ]
        verts = sorted(sorted(v) for v in self.vertices)
        return json.dumps({"dim": self.dim, "facets": facets, "vertices": verts})


@dataclass(frozen=True)
class FaceRef:
    facet_set: frozenset

    def __post_init__(self):
        object.__setattr__(self, "facet_set", frozenset(self.facet_set))

    @property
    def codim(self):
        return len(self.facet_set)


@dataclass
class TruncationSchedule:
    """Faces to truncate, grouped by dimension with the lowest first."""

    groups: list = field(default_factory=list)  # list of lists of FaceRef

    def __post_init__(self):
        codims = [g[0].codim for g in self.groups if g]
        for g in self.groups:
            if len({f.codim for f in g}) > 1:
                raise ValueError("a schedule group mixes codimensions")
        if codims != sorted(codims, reverse=True):
            raise ValueError("schedule groups must go up in dimension")

    def faces(self):
        return [f for g in self.groups for f in g]

    def counts(self) -> dict:
        """``{codim: number of faces}`` in schedule order."""
        return {g[0].codim: len(g) for g in self.groups if g}


POINT = SimplePolytope(0, 0, [frozenset()])


def simplex(n: int) -> SimplePolytope:
    """The ``n``-simplex: ``n + 1`` facets, vertex ``i`` omits facet ``i``.

    ``simplex(0)`` is the point, which has no facets.
    """
    if n < 0:
        raise ValueError("simplex dimension must be non-negative")
    if n == 0:
        return POINT
    facets = range(n + 1)
    return SimplePolytope(n, n + 1, [frozenset(facets) - {i} for i in facets])


def product(p: SimplePolytope, q: SimplePolytope) -> SimplePolytope:
    """Cartesian product; facets of ``q`` are shifted by ``p.facet_count``."""
    shift = p.facet_count
    verts = [
        u | frozenset(f + shift for f in v) for u in p.vertices for v in q.vertices
    ]
    return SimplePolytope(p.dim + q.dim, p.facet_count + q.facet_count, verts)


def build_interval_simplex(n_free: int) -> SimplePolytope:
    """The ``n``-simplex of ``n`` particles in the unit interval.

    Facet ``i`` is the collision of nodes ``i`` and ``i + 1`` of the fixed-end
    path, labelled by the bracket ``(i, i + 1)``.  Vertex ``i`` (missing facet
    ``i``) keeps nodes ``i`` and ``i + 1`` apart.
    """
    frame = PathFrame(n_free, fixed_ends=True)
    base = simplex(n_free)
    labels = tuple(Bracket(i, i + 1) for i in range(n_free + 1))
    return SimplePolytope(base.dim, base.facet_count, base.vertices, labels, frame)


def build_circle_product(partition) -> SimplePolytope:
    """``Δ_x × Δ_y × Δ_z`` with facets labelled by adjacent-pair arcs.

    Empty regions contribute no factor, and two adjacent fixed nodes give
    no facet.
    """
    frame = CircleFrame(partition)
    if frame.num_free == 0:
        raise ValueError("partition must place at least one particle")
    n = frame.num_nodes
    poly = POINT
    labels = []
    for region, size in enumerate(frame.partition):
        if size == 0:
            continue
        left = frame.fixed_positions[region]
        poly = product(poly, simplex(size))
        labels.extend(Arc((left + i) % n, 2) for i in range(size + 1))
    return SimplePolytope(poly.dim, poly.facet_count, poly.vertices, tuple(labels), frame)


def _label_nodes(frame, label):
    if isinstance(frame, CircleFrame):
        return label.nodes(frame.num_nodes)
    return frozenset(label.nodes())


def _merged_label(frame, nodes):
    if isinstance(frame, CircleFrame):
        return arc_from_nodes(nodes, frame.num_nodes)
    return Bracket(min(nodes), max(nodes))


def collision_label(p: SimplePolytope, facet_set):
    """Merged bracket when the facets form one run of adjacent collisions, else None."""
    k = len(facet_set)
    nodes = [_label_nodes(p.frame, p.labels[f]) for f in facet_set]
    if any(len(s) != 2 for s in nodes):
        raise ValueError("collision faces are defined from adjacent-pair facet labels")
    union = frozenset().union(*nodes)
    if len(union) != k + 1:
        return None
    if sum(1 for q in p.frame.fixed_positions if q in union) > 1:
        return None
    return _merged_label(p.frame, union)


def collision_faces(p: SimplePolytope) -> TruncationSchedule:
    """Faces of codimension ``k >= 2`` where ``k + 1`` adjacent particles collide."""
    if not p.labeled:
        raise ValueError("collision faces need a labelled polytope")
    by_codim = {}
    for face in p.faces():
        if len(face) >= 2 and collision_label(p, face) is not None:
            by_codim.setdefault(len(face), []).append(FaceRef(face))
    groups = [
        sorted(by_codim[k], key=lambda f: sorted(f.facet_set))
        for k in sorted(by_codim, reverse=True)
    ]
    return TruncationSchedule(groups)


def truncate_face(p: SimplePolytope, f: FaceRef, label=None) -> SimplePolytope:
    """Cut off face ``f``, replacing it by a new facet ``F × Δ_{k-1}``.

    ``label`` names the new facet; for labelled polytopes it defaults to the
    merged collision bracket of ``f``.
    """
    k = f.codim
    if k < 2:
        raise ValueError("only faces of codimension >= 2 can be truncated")
    on_face = p.face_vertices(f.facet_set)
    if not on_face:
        raise ValueError(f"facet set {sorted(f.facet_set)} is not a face")
    new = p.facet_count
    verts = set(p.vertices) - set(on_face)
    for v in on_face:
        for g in f.facet_set:
            verts.add((v - {g}) | {new})
    labels = None
    if p.labeled:
        if label is None:
            label = collision_label(p, f.facet_set)
            if label is None:
                raise ValueError("face is not a collision face; pass a label")
        labels = p.labels + (label,)
    out = SimplePolytope(p.dim, new + 1, verts, labels, p.frame)
    assert out.is_simple()
    return out


def iterated_truncation(p: SimplePolytope, sched: TruncationSchedule) -> SimplePolytope:
    """Truncate the scheduled faces in order, tracked by original facet sets.

    Merged labels are computed on the input polytope, where every facet label
    is still an adjacent pair.
    """
    labels = {f: collision_label(p, f.facet_set) for f in sched.faces()} if p.labeled else {}
    for f in sched.faces():
        if not p.face_vertices(f.facet_set):
            raise RuntimeError(f"scheduled face {sorted(f.facet_set)} vanished")
        p = truncate_face(p, f, labels.get(f))
    return p


def face_lattice(p: SimplePolytope) -> GradedPoset:
    """Faces ordered by inclusion, ranked by codimension (covers are ``(smaller, larger)``)."""
    faces = sorted(p.faces(), key=lambda s: (len(s), sorted(s)))
    present = set(faces)
    covers = []
    for s in faces:
        for g in s:
            t = s - {g}
            assert t in present
            covers.append((s, t))
    return GradedPoset.build(faces, {s: len(s) for s in faces}, covers)


def bracketing_of_face(p: SimplePolytope, facet_set):
    """Bracketing obtained by superimposing the labels of a face's facets."""
    labels = [p.labels[f] for f in facet_set]
    if isinstance(p.frame, CircleFrame):
        return CircleBracketing(p.frame, labels)
    return PathBracketing(p.frame, labels)


def labeled_isomorphism(p: SimplePolytope):
    """Map faces to bracketings of the associahedron poset via facet labels.

    Returns the mapping when it is an isomorphism onto the bracketing poset
    of ``K_n`` (circle labels are cut open at position 0), else ``None``.
    """
    if not p.labeled:
        raise ValueError("labelled polytope required")
    lattice = face_lattice(p)
    target = face_poset(associahedron_frame_of(p))
    mapping = {}
    try:
        for s in lattice.elements:
            b = bracketing_of_face(p, s)
            if isinstance(b, CircleBracketing):
                b = circle_to_path(b)
            elif b.frame != target.elements[0].frame:
                b = PathBracketing(target.elements[0].frame, b.brackets)
            mapping[s] = b
    except ValueError:
        return None
    if set(mapping.values()) != set(target.elements) or len(set(mapping.values())) != len(mapping):
        return None
    image = {(mapping[lo], mapping[hi]) for lo, hi in lattice.covers}
    return mapping if image == set(target.covers) else None


def associahedron_frame_of(p: SimplePolytope) -> PathFrame:
    """Free path frame of the associahedron a labelled polytope truncates to."""
    if isinstance(p.frame, CircleFrame):
        return PathFrame(p.frame.num_nodes - 1)
    return PathFrame(p.frame.num_nodes)


def truncated_matches_associahedron(p: SimplePolytope) -> bool:
    """Generic (label-free) isomorphism test of a polytope against ``K_n``."""
    return poset_isomorphic(face_lattice(p), face_poset(associahedron_frame_of(p))) is not None


def facet_census(p: SimplePolytope) -> dict:
    """Count facets by the f-vector of the facet, as a combinatorial type key."""
    lattice = face_lattice(p)
    out = {}
    for f in range(p.facet_count):
        sub = lattice.down_set(frozenset([f]))
        out[sub.rank_counts()] = out.get(sub.rank_counts(), 0) + 1
    return out
