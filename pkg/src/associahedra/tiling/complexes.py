"""Cell complexes glued from labelled associahedral tiles.

Cells of the minimal complexes are twist classes of labelled diagrams.  A
diagram with ``k`` brackets is a codimension ``k`` face of the tile carrying
its labelling; twisting along one of its brackets moves to the matching face
of a neighbouring tile.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from itertools import permutations

from ..bracketings import PathFrame, enumerate_bracketings
from ..circle import CircleFrame, enumerate_circle_bracketings
from ..poset import GradedPoset
from .diagrams import CIRCLE, PATH, LabeledDiagram, infinity_label, orbit

MINIMAL = "minimal"
MAXIMAL = "maximal"
DEFAULT_LIMIT = 4


@dataclass(frozen=True)
class ProjectiveSphere:
    """Projective sphere of the braid arrangement on ``n + 2`` coordinates."""

    n: int

    kind = PATH

    def __str__(self):
        return f"PV^{self.n}"


@dataclass(frozen=True)
class Moduli:
    """Real moduli space of ``points`` punctures on the projective line."""

    points: int

    kind = CIRCLE

    @property
    def n(self):
        return self.points - 3

    def __str__(self):
        return f"M_0^{self.points}(R)"


def space_for(name: str, n: int):
    """``'pv'`` or ``'moduli'`` with the common dimension parameter ``n``."""
    if name in ("pv", "sphere", "projective"):
        return ProjectiveSphere(n)
    if name in ("moduli", "m"):
        return Moduli(n + 3)
    raise ValueError(f"unknown space {name!r}")


def _check_space(space, limit):
    if space.n < 1:
        raise ValueError("the dimension parameter n must be at least 1")
    if limit is not None and space.n > limit:
        raise ValueError(f"n = {space.n} exceeds the enumeration limit {limit}")


# -- chambers and diagrams ---------------------------------------------------


def circle_chamber_labels(n: int):
    """Labels of every open chamber: free labels spread over the three regions.

    Yields ``(labels, partition)`` with infinity at position 0 and the cyclic
    order ``∞, region, 0, region, 1, region``.
    """
    inf = infinity_label(n)
    free = range(2, n + 2)
    for x in range(n + 1):
        for y in range(n + 1 - x):
            z = n - x - y
            for perm in permutations(free):
                labels = (inf,) + perm[:x] + (0,) + perm[x:x + y] + (1,) + perm[x + y:]
                yield labels, (x, y, z)


def chamber_labels(space):
    if space.kind == PATH:
        for perm in permutations(range(space.n + 2)):
            if perm[0] < perm[-1]:
                yield perm
    else:
        for labels, _ in circle_chamber_labels(space.n):
            yield labels


def _bracket_tuples_path(n):
    return [b.sorted_brackets() for b in enumerate_bracketings(PathFrame(n + 2))]


def labeled_diagrams(space, codim=None):
    """Every labelled diagram of the space (paths: both orientations)."""
    n = space.n
    if space.kind == PATH:
        families = _bracket_tuples_path(n)
        if codim is not None:
            families = [f for f in families if len(f) == codim]
        for perm in permutations(range(n + 2)):
            for fam in families:
                yield LabeledDiagram(PATH, perm, fam)
        return
    cache = {}
    for labels, part in circle_chamber_labels(n):
        if part not in cache:
            cache[part] = [cb.sorted_arcs() for cb in enumerate_circle_bracketings(CircleFrame(part))]
        for fam in cache[part]:
            if codim is None or len(fam) == codim:
                yield LabeledDiagram(CIRCLE, labels, fam)


def tile_bracketings(d: LabeledDiagram):
    """All bracketings of the tile carrying the labels of ``d``."""
    if d.kind == PATH:
        return _bracket_tuples_path(d.n)
    part = circle_partition(d.labels)
    return [cb.sorted_arcs() for cb in enumerate_circle_bracketings(CircleFrame(part))]


def circle_partition(labels) -> tuple:
    size = len(labels)
    p0, p1 = labels.index(0), labels.index(1)
    return (p0 - 1, p1 - p0 - 1, size - p1 - 1)


def enumerate_tiles(space, limit=DEFAULT_LIMIT) -> list:
    """Top cells as twist classes; one per tile."""
    _check_space(space, limit)
    from .diagrams import TwistClass

    seen = set()
    out = []
    for d in labeled_diagrams(space, codim=0):
        if d in seen:
            continue
        members = orbit(d)
        seen.update(members)
        out.append(TwistClass(members[0], len(members)))
    return sorted(out, key=lambda c: c.canonical)


def chamber_census(space) -> Counter:
    """Open chambers by product type (sorted non-zero region sizes).

    On the projective sphere every chamber is the simplex ``(n,)``.
    """
    if space.kind == PATH:
        return Counter({(space.n,): len(list(chamber_labels(space)))})
    census = Counter()
    for _, part in circle_chamber_labels(space.n):
        census[tuple(sorted((v for v in part if v), reverse=True))] += 1
    return census


def chamber_counts_equal(n: int, limit=DEFAULT_LIMIT) -> bool:
    return len(enumerate_tiles(ProjectiveSphere(n), limit)) == len(
        enumerate_tiles(Moduli(n + 3), limit)
    )


# -- complexes -----------------------------------------------------------------


@dataclass
class Cell:
    id: int
    dim: int
    key: object  # canonical diagram or other canonical description
    orbit_size: int = 1


@dataclass
class CellComplex:
    """Graded cells with covering incidences.

    ``tile_faces`` lists, for every top cell, the cell of each face slot of
    its tile, so a cell appearing twice there is met twice by that tile.
    Two-dimensional complexes also carry ``polygons``: the boundary of each
    top cell as ``(edge, sign)`` sides, with ``edge_ends`` fixing each edge's
    own direction.
    """

    dim: int
    cells: list
    covers: frozenset  # (lower, upper) cell ids
    tile_faces: dict
    polygons: dict = None
    edge_ends: dict = None
    name: str = ""
    class_of: dict = field(default=None, repr=False)

    def cells_of_dim(self, d):
        return [c for c in self.cells if c.dim == d]

    def f_vector(self) -> tuple:
        """Cell counts by dimension, vertices first."""
        counts = Counter(c.dim for c in self.cells)
        return tuple(counts.get(d, 0) for d in range(self.dim + 1))

    def top_cells(self):
        return self.cells_of_dim(self.dim)

    def poset(self) -> GradedPoset:
        return GradedPoset.build(
            [c.id for c in self.cells], {c.id: c.dim for c in self.cells}, self.covers
        )

    def to_json(self) -> str:
        cells = [
            {"id": c.id, "dim": c.dim, "canonical_diagram": _describe(c.key)}
            for c in self.cells
        ]
        incidence = sorted([lo, hi] for lo, hi in self.covers)
        return json.dumps({"dim": self.dim, "cells": cells, "incidence": incidence})

    def f_vector_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["complex"] + [f"dim{d}" for d in range(self.dim + 1)] + ["euler"])
        w.writerow([self.name] + list(self.f_vector()) + [euler_characteristic(self)])
        return buf.getvalue()

    def dual_graph_dot(self) -> str:
        """Top cells joined through each shared codimension-one cell."""
        by_facet = defaultdict(list)
        for top, slots in self.tile_faces.items():
            for s in slots:
                if self.cells[s].dim == self.dim - 1:
                    by_facet[s].append(top)
        lines = ["graph dual {"]
        for c in self.top_cells():
            text = str(c.key).replace('"', r"\"")
            lines.append(f'  t{c.id} [label="{text}"];')
        for facet in sorted(by_facet):
            tops = by_facet[facet]
            for i in range(len(tops)):
                for j in range(i + 1, len(tops)):
                    lines.append(f"  t{tops[i]} -- t{tops[j]} [label=\"{facet}\"];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _describe(key):
    if isinstance(key, LabeledDiagram):
        return {"kind": key.kind, "labels": list(key.labels), "brackets": [list(b) for b in key.brackets]}
    return str(key)


def _cover_pairs(rep: LabeledDiagram, class_of):
    for b in rep.brackets:
        rest = tuple(x for x in rep.brackets if x != b)
        yield class_of[rep.with_brackets(rest)]


def build_twist_complex(space, limit=DEFAULT_LIMIT) -> CellComplex:
    """Minimal-building-set complex: cells are twist classes of all diagrams."""
    _check_space(space, limit)
    n = space.n
    class_reps = []
    member_of = {}
    for d in labeled_diagrams(space):
        if d in member_of:
            continue
        members = orbit(d)
        idx = len(class_reps)
        class_reps.append((members[0], len(members)))
        for m in members:
            member_of[m] = idx
    order = sorted(range(len(class_reps)), key=lambda i: (n - class_reps[i][0].codim, class_reps[i][0]))
    renumber = {old: new for new, old in enumerate(order)}
    cells = [
        Cell(renumber[i], n - class_reps[i][0].codim, class_reps[i][0], class_reps[i][1])
        for i in order
    ]
    class_of = {d: renumber[i] for d, i in member_of.items()}
    # F is a face of G when some representative of G is a representative of F
    # with one bracket removed, so every orbit member contributes.
    covers = set()
    for d, cid in class_of.items():
        for g in _cover_pairs(d, class_of):
            covers.add((cid, g))
    tile_faces = {}
    for c in cells:
        if c.dim != n:
            continue
        slots = [class_of[c.key.with_brackets(fam)] for fam in tile_bracketings(c.key) if fam]
        tile_faces[c.id] = tuple(slots)
    cx = CellComplex(n, cells, frozenset(covers), tile_faces, name=str(space), class_of=class_of)
    if n == 2:
        _attach_polygons(cx)
    return cx


def _polygon_cycle(rep: LabeledDiagram):
    """Cyclic sequence of ``(edge bracketing, vertex bracketing)`` around a 2-tile."""
    fams = tile_bracketings(rep)
    edges = [f for f in fams if len(f) == 1]
    verts = [f for f in fams if len(f) == 2]
    at_edge = {e: [v for v in verts if e[0] in v] for e in edges}
    at_vert = {v: [e for e in edges if e[0] in v] for v in verts}
    start = edges[0]
    cycle = []
    prev_v = None
    e = start
    v = at_edge[e][0]
    while True:
        cycle.append((e, prev_v, v))
        nxt = [x for x in at_vert[v] if x != e]
        prev_v, e = v, nxt[0]
        v = [x for x in at_edge[e] if x != prev_v][0]
        if e == start:
            break
    cycle[0] = (cycle[0][0], prev_v, cycle[0][2])
    return cycle


def _attach_polygons(cx: CellComplex) -> None:
    polygons = {}
    ends = {}
    below = defaultdict(set)
    for lo, hi in cx.covers:
        below[hi].add(lo)
    for c in cx.cells_of_dim(1):
        vs = sorted(below[c.id])
        if len(vs) != 2:
            raise ValueError(f"edge cell {c.id} does not have two distinct end vertices")
        ends[c.id] = tuple(vs)
    for top in cx.top_cells():
        rep = top.key
        sides = []
        for e, u, v in _polygon_cycle(rep):
            edge = cx.class_of[rep.with_brackets(e)]
            cu = cx.class_of[rep.with_brackets(u)]
            cv = cx.class_of[rep.with_brackets(v)]
            if (cu, cv) == ends[edge]:
                sides.append((edge, 1))
            elif (cv, cu) == ends[edge]:
                sides.append((edge, -1))
            else:
                raise AssertionError("side endpoints disagree with edge cell")
        polygons[top.id] = sides
    cx.polygons = polygons
    cx.edge_ends = ends


def complex_from_polygons(polygons, edge_ends, name="", keys=None) -> CellComplex:
    """Two-dimensional complex from polygon boundary words.

    ``polygons`` is a list of side lists ``[(edge, sign), ...]`` in cyclic
    order; ``edge_ends[edge] = (tail, head)``.  A side with sign ``+1`` runs
    from tail to head.  Vertex and edge names may be any sortable values.
    """
    vnames = sorted({v for ends in edge_ends.values() for v in ends})
    enames = sorted(edge_ends)
    vid = {v: i for i, v in enumerate(vnames)}
    eid = {e: len(vnames) + i for i, e in enumerate(enames)}
    first_face = len(vnames) + len(enames)
    cells = [Cell(vid[v], 0, v) for v in vnames] + [Cell(eid[e], 1, e) for e in enames]
    covers = set()
    for e, (t, h) in edge_ends.items():
        covers.add((vid[t], eid[e]))
        covers.add((vid[h], eid[e]))
    poly_out, tile_faces = {}, {}
    for i, sides in enumerate(polygons):
        fid = first_face + i
        cells.append(Cell(fid, 2, keys[i] if keys else f"face{i}"))
        slots = []
        for e, sign in sides:
            t, h = edge_ends[e]
            start = t if sign > 0 else h
            covers.add((eid[e], fid))
            slots.extend([eid[e], vid[start]])
        tile_faces[fid] = tuple(slots)
        poly_out[fid] = [(eid[e], sign) for e, sign in sides]
        _check_closed_word(sides, edge_ends)
    ends = {eid[e]: (vid[t], vid[h]) for e, (t, h) in edge_ends.items()}
    return CellComplex(2, cells, frozenset(covers), tile_faces, poly_out, ends, name)


def _check_closed_word(sides, edge_ends):
    for (e1, s1), (e2, s2) in zip(sides, sides[1:] + sides[:1]):
        t1, h1 = edge_ends[e1]
        t2, h2 = edge_ends[e2]
        end = h1 if s1 > 0 else t1
        start = t2 if s2 > 0 else h2
        if end != start:
            raise ValueError(f"polygon sides {e1} and {e2} do not meet")


def build_complex(space, building_set=MINIMAL, limit=DEFAULT_LIMIT) -> CellComplex:
    if building_set == MINIMAL:
        return build_twist_complex(space, limit)
    if building_set == MAXIMAL:
        if space.n != 2:
            raise ValueError("the maximal building set is only supported for n = 2")
        from .polygons import build_polygon_complex

        return build_polygon_complex(space, MAXIMAL)
    raise ValueError(f"unknown building set {building_set!r}")


# -- invariants -----------------------------------------------------------------


def euler_characteristic(c: CellComplex) -> int:
    return sum((-1) ** d * k for d, k in enumerate(c.f_vector()))


def incidence_multiplicities(c: CellComplex) -> dict:
    """How many tile face slots land on each non-top cell."""
    mult = Counter()
    for slots in c.tile_faces.values():
        mult.update(slots)
    return {cell.id: mult.get(cell.id, 0) for cell in c.cells if cell.dim < c.dim}


def verify_right_angled(c: CellComplex) -> bool:
    """Every codimension ``k`` cell is met ``2^k`` times by the top cells."""
    dims = {cell.id: cell.dim for cell in c.cells}
    return all(m == 2 ** (c.dim - dims[cid]) for cid, m in incidence_multiplicities(c).items())


@dataclass(frozen=True)
class SurfaceClass:
    closed: bool
    orientable: bool
    chi: int
    diagnostics: tuple = ()

    @property
    def name(self) -> str:
        if not self.closed:
            return "not a closed surface"
        if self.orientable:
            genus = (2 - self.chi) // 2
            return "S^2" if genus == 0 else ("T^2" if genus == 1 else f"#^{genus} T^2")
        return f"#^{2 - self.chi} RP^2"


def classify_surface(c: CellComplex) -> SurfaceClass:
    if c.dim != 2 or c.polygons is None:
        raise ValueError("surface classification needs a 2-dimensional polygon complex")
    chi = euler_characteristic(c)
    problems = []
    uses = defaultdict(list)  # edge -> [(face, sign)]
    for face, sides in c.polygons.items():
        for e, sign in sides:
            uses[e].append((face, sign))
    for cell in c.cells_of_dim(1):
        k = len(uses.get(cell.id, []))
        if k != 2:
            problems.append(f"edge {cell.id} lies on {k} polygon sides")

    # link of each vertex: nodes are edge ends, arcs are polygon corners
    link = defaultdict(list)
    for face, sides in c.polygons.items():
        for (e1, s1), (e2, s2) in zip(sides, sides[1:] + sides[:1]):
            a = (e1, "head" if s1 > 0 else "tail")
            b = (e2, "tail" if s2 > 0 else "head")
            link[a].append(b)
            link[b].append(a)
    at_vertex = defaultdict(set)
    for e, (t, h) in c.edge_ends.items():
        at_vertex[t].add((e, "tail"))
        at_vertex[h].add((e, "head"))
    for cell in c.cells_of_dim(0):
        nodes = at_vertex.get(cell.id, set())
        if not nodes:
            problems.append(f"vertex {cell.id} is isolated")
            continue
        if any(len(link[x]) != 2 for x in nodes):
            problems.append(f"vertex {cell.id} has a link that is not a cycle")
            continue
        start = next(iter(nodes))
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in link[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if seen != nodes:
            problems.append(f"vertex {cell.id} has a disconnected link")
    closed = not problems

    # orient faces so that every edge is traversed once each way
    orientation = {}
    orientable = True
    adj = defaultdict(list)
    for e, pairs in uses.items():
        if len(pairs) == 2:
            (f1, s1), (f2, s2) = pairs
            adj[f1].append((f2, s1, s2))
            adj[f2].append((f1, s2, s1))
    for f in c.polygons:
        if f in orientation:
            continue
        orientation[f] = 1
        queue = deque([f])
        while queue:
            x = queue.popleft()
            for y, sx, sy in adj[x]:
                want = -orientation[x] * sx * sy
                if y not in orientation:
                    orientation[y] = want
                    queue.append(y)
                elif orientation[y] != want:
                    orientable = False
    return SurfaceClass(closed, orientable, chi, tuple(problems))
