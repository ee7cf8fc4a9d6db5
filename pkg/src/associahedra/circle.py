"""Bracketings of a circle with three fixed nodes.

The canonical cyclic node order for a partition ``(x, y, z)`` is::

    F, x free nodes, F, y free nodes, F, z free nodes

so the fixed nodes sit at positions ``0``, ``x + 1`` and ``x + y + 2``.
Position 0 is the default cut node (the point sent to infinity).  Arcs are
stored as ``(start, length)``; an arc wraps when it runs past the last
position.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .bracketings import Bracket, PathBracketing, PathFrame, face_poset
from .poset import GradedPoset


class Arc(NamedTuple):
    start: int
    length: int

    def nodes(self, n: int):
        return frozenset((self.start + i) % n for i in range(self.length))

    def wraps(self, n: int) -> bool:
        return self.start + self.length > n

    def to_json(self, n: int):
        return [self.start, self.length, self.wraps(n)]


def arc_from_nodes(nodes, n: int) -> Arc:
    """Recover the arc covering a contiguous cyclic set of positions."""
    nodes = frozenset(nodes)
    if not nodes or len(nodes) >= n:
        raise ValueError("not a proper arc")
    starts = [p for p in nodes if (p - 1) % n not in nodes]
    if len(starts) != 1:
        raise ValueError(f"positions {sorted(nodes)} are not contiguous on the circle")
    return Arc(starts[0], len(nodes))


def arcs_laminar(a: Arc, b: Arc, n: int) -> bool:
    na, nb = a.nodes(n), b.nodes(n)
    return not (na & nb) or na <= nb or nb <= na


@dataclass(frozen=True)
class CircleFrame:
    partition: tuple

    def __post_init__(self):
        part = tuple(int(v) for v in self.partition)
        if len(part) != 3 or min(part) < 0:
            raise ValueError("a circle frame needs three non-negative region sizes")
        object.__setattr__(self, "partition", part)

    @property
    def num_free(self):
        return sum(self.partition)

    @property
    def num_nodes(self):
        return self.num_free + 3

    @property
    def fixed_positions(self):
        x, y, _ = self.partition
        return (0, x + 1, x + y + 2)

    @property
    def associahedron_index(self):
        """``n`` such that the bracketing poset is isomorphic to that of ``K_n``."""
        return self.num_free + 2

    def is_valid_arc(self, arc: Arc) -> bool:
        n = self.num_nodes
        if not (0 <= arc.start < n and 2 <= arc.length < n):
            return False
        nodes = arc.nodes(n)
        return sum(1 for p in self.fixed_positions if p in nodes) <= 1

    def arcs(self) -> list:
        n = self.num_nodes
        out = [Arc(s, l) for s in range(n) for l in range(2, n)]
        return [a for a in out if self.is_valid_arc(a)]

    def region_of(self, pos):
        """Index of the region holding a free position, ``None`` for fixed nodes."""
        f = self.fixed_positions
        if pos in f:
            return None
        if pos < f[1]:
            return 0
        if pos < f[2]:
            return 1
        return 2


@dataclass(frozen=True)
class CircleBracketing:
    frame: CircleFrame
    arcs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "arcs", frozenset(Arc(*a) for a in self.arcs))
        n = self.frame.num_nodes
        for a in self.arcs:
            if not self.frame.is_valid_arc(a):
                raise ValueError(f"arc {a} is not valid on {self.frame}")
        arcs = sorted(self.arcs)
        for i, a in enumerate(arcs):
            for b in arcs[i + 1:]:
                if not arcs_laminar(a, b, n):
                    raise ValueError(f"arcs {a} and {b} cross")

    @property
    def codim(self):
        return len(self.arcs)

    def sorted_arcs(self):
        return tuple(sorted(self.arcs))


def enumerate_circle_bracketings(frame: CircleFrame) -> list:
    n = frame.num_nodes
    candidates = frame.arcs()
    out = []

    def grow(start, chosen):
        out.append(tuple(chosen))
        for i in range(start, len(candidates)):
            a = candidates[i]
            if all(arcs_laminar(a, c, n) for c in chosen):
                chosen.append(a)
                grow(i + 1, chosen)
                chosen.pop()

    grow(0, [])
    out.sort()
    return [CircleBracketing(frame, arcs) for arcs in out]


@lru_cache(maxsize=16)
def circle_face_poset(frame: CircleFrame) -> GradedPoset:
    elements = enumerate_circle_bracketings(frame)
    covers = [
        (x, CircleBracketing(frame, x.arcs - {a})) for x in elements for a in x.arcs
    ]
    return GradedPoset.build(elements, {e: e.codim for e in elements}, covers)


# -- cutting the circle open ---------------------------------------------------


def cut_arc(arc: Arc, n: int, cut: int) -> Bracket:
    """Image of an arc on the path obtained by removing position ``cut``.

    Path index ``j`` corresponds to circle position ``cut + 1 + j``.  An arc
    through the cut node goes to the interval of the complementary nodes.
    """
    nodes = arc.nodes(n)
    if cut in nodes:
        nodes = frozenset(range(n)) - nodes
    idx = sorted((p - cut - 1) % n for p in nodes)
    if idx[-1] - idx[0] + 1 != len(idx):
        raise ValueError(f"arc {arc} does not cut to an interval")
    return Bracket(idx[0], idx[-1])


def uncut_bracket(b: Bracket, n: int, cut: int, fixed) -> Arc:
    """Inverse of :func:`cut_arc` for a circle with the given fixed positions."""
    nodes = frozenset((cut + 1 + j) % n for j in b.nodes())
    if sum(1 for p in fixed if p in nodes) > 1:
        nodes = frozenset(range(n)) - nodes
    assert sum(1 for p in fixed if p in nodes) <= 1
    return arc_from_nodes(nodes, n)


def _check_cut(frame: CircleFrame, cut):
    if cut not in frame.fixed_positions:
        raise ValueError(f"cut position {cut} is not a fixed node of {frame}")


def path_frame_for(frame: CircleFrame) -> PathFrame:
    return PathFrame(frame.num_nodes - 1)


def circle_to_path(cb: CircleBracketing, cut: int = 0) -> PathBracketing:
    frame = cb.frame
    _check_cut(frame, cut)
    n = frame.num_nodes
    return PathBracketing(path_frame_for(frame), [cut_arc(a, n, cut) for a in cb.arcs])


def path_to_circle(pb: PathBracketing, frame: CircleFrame, cut: int = 0) -> CircleBracketing:
    _check_cut(frame, cut)
    n = frame.num_nodes
    if pb.frame.num_nodes != n - 1:
        raise ValueError(f"path has {pb.frame.num_nodes} nodes, circle cut needs {n - 1}")
    return CircleBracketing(
        frame, [uncut_bracket(b, n, cut, frame.fixed_positions) for b in pb.brackets]
    )


def verify_B_equals_A(frame: CircleFrame, cut: int = 0) -> bool:
    """Check that cutting at ``cut`` is an isomorphism of bracketing posets."""
    circ = circle_face_poset(frame)
    path = face_poset(path_frame_for(frame))
    image = {x: circle_to_path(x, cut) for x in circ.elements}
    if len(set(image.values())) != len(circ) or set(image.values()) != set(path.elements):
        return False
    if any(x.codim != y.codim for x, y in image.items()):
        return False
    return {(image[lo], image[hi]) for lo, hi in circ.covers} == set(path.covers)


# -- counting product types ----------------------------------------------------


def partitions_at_most(total: int, parts: int = 3) -> list:
    """Partitions of ``total`` into at most ``parts`` positive parts, descending."""
    out = []

    def grow(remaining, cap, chosen):
        if remaining == 0:
            out.append(tuple(chosen))
            return
        if len(chosen) == parts:
            return
        for v in range(min(cap, remaining), 0, -1):
            grow(remaining - v, v, chosen + [v])

    grow(total, total, [])
    return out


def partitions_exactly(total: int, parts: int) -> int:
    return sum(1 for p in partitions_at_most(total, parts) if len(p) == parts)


@dataclass(frozen=True)
class ProductTypeCount:
    n: int
    enumerated: int
    formula_as_printed: int  # p_3(n-3) + p_2(n-2) + 1
    formula_shifted: int  # p_3(n-2) + p_2(n-2) + 1
    types: tuple

    @property
    def discrepancy(self) -> bool:
        return self.enumerated != self.formula_as_printed


def count_product_types(n: int) -> ProductTypeCount:
    """Number of simplex triple products that truncate to ``K_n``."""
    if n < 3:
        raise ValueError("K_n needs n >= 3")
    types = tuple(partitions_at_most(n - 2, 3))
    printed = partitions_exactly(n - 3, 3) + partitions_exactly(n - 2, 2) + 1
    shifted = partitions_exactly(n - 2, 3) + partitions_exactly(n - 2, 2) + 1
    return ProductTypeCount(n, len(types), printed, shifted, types)


def padded(partition) -> tuple:
    p = tuple(partition) + (0,) * (3 - len(partition))
    if len(p) != 3:
        raise ValueError(f"bad partition {partition}")
    return p
