"""Two-dimensional complexes glued from truncated chamber polygons.

Each open chamber of the ``n = 2`` arrangement is a polygon (a triangle on
the projective sphere; a triangle or a square on the moduli torus).  Its
vertices are crossings, labelled by the collision blocks meeting there.
Blowing a vertex up replaces it with a new side.  The minimal building set
blows up only crossings that are a single collision block; the maximal one
blows up every crossing.

A side or corner is named by its chamber labelling together with a set of
*flags*, each flag a tuple of disjoint blocks.  Crossing a side reverses each
of its blocks; the cells of the glued complex are the orbits of these block
reversals (plus global reflection on the projective sphere).
"""

from __future__ import annotations

from collections import deque

from .complexes import MAXIMAL, MINIMAL, chamber_labels, complex_from_polygons
from .diagrams import CIRCLE, PATH, circle_fixed_labels, map_block, mirror_perm, permute_labels, shift_block


def _nodes(kind, size, block):
    if kind == PATH:
        return set(range(block[0], block[1] + 1))
    return {(block[0] + i) % size for i in range(block[1])}


def _block_from_nodes(kind, size, nodes):
    if kind == PATH:
        return (min(nodes), max(nodes))
    start = next(p for p in nodes if (p - 1) % size not in nodes)
    return (start, len(nodes))


def _compose(perms, size):
    out = list(range(size))
    for perm in perms:
        out = [perm[p] for p in out]
    return out


def _apply_flags(kind, labels, flags, perm):
    size = len(labels)
    new_labels, shift = permute_labels(kind, labels, perm)
    new_flags = frozenset(
        tuple(sorted(shift_block(kind, size, map_block(kind, size, b, perm), shift) for b in flag))
        for flag in flags
    )
    return new_labels, new_flags


def _moves(kind, labels, flags):
    size = len(labels)
    for flag in flags:
        perm = _compose([mirror_perm(kind, size, b) for b in flag], size)
        yield _apply_flags(kind, labels, flags, perm)
    if kind == PATH:
        yield _apply_flags(kind, labels, flags, [size - 1 - p for p in range(size)])


def flag_orbit(kind, labels, flags):
    start = (tuple(labels), frozenset(flags))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in _moves(kind, *x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _canonical(kind, labels, flags, cache):
    key = (tuple(labels), frozenset(flags))
    if key not in cache:
        members = flag_orbit(kind, labels, flags)
        rep = min(members, key=lambda m: (m[0], sorted(m[1])))
        rep = (rep[0], tuple(sorted(rep[1])))
        for m in members:
            cache[m] = rep
    return cache[key]


def _fixed_positions(kind, labels):
    if kind == PATH:
        return set()
    n = len(labels) - 3
    fixed = set(circle_fixed_labels(n))
    return {p for p, lab in enumerate(labels) if lab in fixed}


def chamber_polygon(kind, labels, building_set):
    """Sides of a chamber in cyclic order, as flags (tuples of blocks).

    Also returns, for reporting, the number of original vertices truncated.
    """
    size = len(labels)
    fixed = _fixed_positions(kind, labels)
    if kind == PATH:
        walls = [(i, i + 1) for i in range(size - 1)]
    else:
        walls = [(i, 2) for i in range(size) if not {i, (i + 1) % size} <= fixed]
    wall_nodes = {w: _nodes(kind, size, w) for w in walls}

    def crossing(w1, w2):
        a, b = wall_nodes[w1], wall_nodes[w2]
        blocks = [a | b] if a & b else [a, b]
        for blk in blocks:
            if len(blk & fixed) > 1:
                return None
            if kind == PATH and len(blk) >= size:
                return None
        return tuple(sorted(_block_from_nodes(kind, size, blk) for blk in blocks))

    vertices = {}
    for i, w1 in enumerate(walls):
        for w2 in walls[i + 1:]:
            flag = crossing(w1, w2)
            if flag is not None:
                vertices[frozenset((w1, w2))] = flag
    neighbours = {w: [] for w in walls}
    for pair in vertices:
        w1, w2 = sorted(pair)
        neighbours[w1].append(w2)
        neighbours[w2].append(w1)
    if any(len(v) != 2 for v in neighbours.values()):
        raise ValueError("chamber walls do not close up into a polygon")

    order = [walls[0]]
    prev, cur = None, walls[0]
    while True:
        nxt = [w for w in neighbours[cur] if w != prev][0] if prev else min(neighbours[cur])
        if nxt == walls[0]:
            break
        order.append(nxt)
        prev, cur = cur, nxt

    sides = []
    truncated = 0
    for i, w in enumerate(order):
        sides.append((w,))
        flag = vertices[frozenset((w, order[(i + 1) % len(order)]))]
        if building_set == MAXIMAL or len(flag) == 1:
            truncated += 1
            sides.append(flag)
    return sides, truncated


def build_polygon_complex(space, building_set=MAXIMAL):
    """Glue truncated chamber polygons of a 2-dimensional space."""
    if space.n != 2:
        raise ValueError("polygon gluing is implemented for n = 2 only")
    if building_set not in (MINIMAL, MAXIMAL):
        raise ValueError(f"unknown building set {building_set!r}")
    kind = space.kind
    cache = {}
    polygons, keys, edge_ends = [], [], {}
    for labels in chamber_labels(space):
        sides, _ = chamber_polygon(kind, labels, building_set)
        k = len(sides)
        corners = [
            _canonical(kind, labels, {sides[i], sides[(i + 1) % k]}, cache) for i in range(k)
        ]
        word = []
        for i, flag in enumerate(sides):
            edge = _canonical(kind, labels, {flag}, cache)
            start, end = corners[i - 1], corners[i]
            if start == end:
                raise ValueError("an edge would close up on a single corner")
            tail, head = min(start, end), max(start, end)
            if edge in edge_ends and edge_ends[edge] != (tail, head):
                raise AssertionError("inconsistent edge ends across the gluing")
            edge_ends[edge] = (tail, head)
            word.append((edge, 1 if start == tail else -1))
        polygons.append(word)
        keys.append(_canonical(kind, labels, set(), cache))
    return complex_from_polygons(polygons, edge_ends, name=f"{space} ({building_set})", keys=keys)


def polygon_census(cx) -> dict:
    """Top cells by number of sides, e.g. ``{6: 12}`` for twelve hexagons."""
    out = {}
    for sides in cx.polygons.values():
        out[len(sides)] = out.get(len(sides), 0) + 1
    return dict(sorted(out.items()))


POLYGON_NAMES = {3: "triangles", 4: "squares", 5: "pentagons", 6: "hexagons", 7: "heptagons", 8: "octagons"}


def describe_census(census) -> str:
    return ", ".join(f"{v} {POLYGON_NAMES.get(k, f'{k}-gons')}" for k, v in census.items())
