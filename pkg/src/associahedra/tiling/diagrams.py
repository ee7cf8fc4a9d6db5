"""Labelled bracketings and twist moves.

Two diagram kinds are used.

``path``
    ``n + 2`` labelled nodes ``0..n+1`` on a line, no fixed nodes.  Brackets
    are proper subintervals ``(start, end)``.  Global reflection is a symmetry.

``circle``
    ``n + 3`` labelled nodes on a circle.  Labels ``0`` and ``1`` are fixed
    and label ``n + 2`` is the fixed point at infinity; ``2..n+1`` are free.
    Diagrams are normalised so that infinity sits at position 0.  Brackets are
    arcs ``(start, length)`` holding at most one fixed label.  There is no
    global reflection.

Every move acts on a diagram through a permutation of positions applied to
labels and brackets alike, which keeps the orbit computation exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

PATH = "path"
CIRCLE = "circle"


def infinity_label(n: int) -> int:
    return n + 2


def circle_fixed_labels(n: int) -> tuple:
    return (0, 1, infinity_label(n))


@dataclass(frozen=True, order=True)
class LabeledDiagram:
    kind: str
    labels: tuple
    brackets: tuple  # sorted tuple of (start, end) or (start, length)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "brackets", tuple(sorted(tuple(b) for b in self.brackets)))

    @property
    def size(self):
        return len(self.labels)

    @property
    def n(self):
        """Dimension parameter: tiles are copies of ``K_{n+2}``."""
        return self.size - 2 if self.kind == PATH else self.size - 3

    @property
    def codim(self):
        return len(self.brackets)

    def key(self):
        return (self.labels, self.brackets)

    def bracket_nodes(self, b):
        if self.kind == PATH:
            return frozenset(range(b[0], b[1] + 1))
        return frozenset((b[0] + i) % self.size for i in range(b[1]))

    def with_brackets(self, brackets) -> "LabeledDiagram":
        return LabeledDiagram(self.kind, self.labels, brackets)

    def __str__(self):
        fixed = circle_fixed_labels(self.n) if self.kind == CIRCLE else ()
        names = []
        for lab in self.labels:
            if lab == infinity_label(self.n) and self.kind == CIRCLE:
                names.append("∞")
            elif lab in fixed:
                names.append(f"[{lab}]")
            else:
                names.append(str(lab))
        return " ".join(names) + " | " + " ".join(map(str, self.brackets))


def validate(d: LabeledDiagram) -> None:
    """Raise ``ValueError`` unless ``d`` is a well-formed diagram."""
    size = d.size
    if sorted(d.labels) != list(range(size)):
        raise ValueError("labels must be a permutation of 0..size-1")
    if len(set(d.brackets)) != len(d.brackets):
        raise ValueError("duplicate bracket")
    node_sets = []
    for b in d.brackets:
        if d.kind == PATH:
            s, e = b
            if not (0 <= s < e < size and e - s + 1 <= size - 1):
                raise ValueError(f"bad bracket {b}")
        elif d.kind == CIRCLE:
            s, length = b
            if not (0 <= s < size and 2 <= length < size):
                raise ValueError(f"bad arc {b}")
        else:
            raise ValueError(f"unknown diagram kind {d.kind!r}")
        node_sets.append(d.bracket_nodes(b))
    if d.kind == CIRCLE:
        inf = infinity_label(d.n)
        if d.labels[0] != inf:
            raise ValueError("circle diagrams keep infinity at position 0")
        fixed = set(circle_fixed_labels(d.n))
        if [lab for lab in d.labels if lab in fixed] != [inf, 0, 1]:
            raise ValueError("fixed labels must appear in the cyclic order ∞, 0, 1")
        for b, nodes in zip(d.brackets, node_sets):
            if sum(1 for p in nodes if d.labels[p] in fixed) > 1:
                raise ValueError(f"arc {b} holds two fixed labels")
    for i, a in enumerate(node_sets):
        for b in node_sets[i + 1:]:
            if a & b and not (a <= b or b <= a):
                raise ValueError("brackets overlap")


def map_block(kind, size, block, perm):
    """Image of one bracket (as a node set) under a position permutation."""
    if kind == PATH:
        image = [perm[p] for p in range(block[0], block[1] + 1)]
        return (min(image), max(image))
    length = block[1]
    image = {perm[(block[0] + i) % size] for i in range(length)}
    start = next(p for p in image if (p - 1) % size not in image)
    return (start, length)


def permute_labels(kind, labels, perm):
    """Relabel positions by ``perm``; circles are rotated to put infinity first.

    Returns the new labels and the rotation that was applied.
    """
    out = [None] * len(labels)
    for p, lab in enumerate(labels):
        out[perm[p]] = lab
    if kind == PATH:
        return tuple(out), 0
    shift = out.index(max(out))  # infinity carries the largest label
    return tuple(out[shift:] + out[:shift]), shift


def shift_block(kind, size, block, shift):
    if kind == PATH or shift == 0:
        return block
    return ((block[0] - shift) % size, block[1])


def mirror_perm(kind, size, block):
    """Position permutation reversing the nodes of ``block``."""
    perm = list(range(size))
    if kind == PATH:
        s, e = block
        for p in range(s, e + 1):
            perm[p] = s + e - p
    else:
        s, length = block
        pos = [(s + i) % size for i in range(length)]
        for i, p in enumerate(pos):
            perm[p] = pos[length - 1 - i]
    return perm


def _apply(d: LabeledDiagram, perm) -> LabeledDiagram:
    """Move the content of position ``p`` to ``perm[p]`` and renormalise."""
    labels, shift = permute_labels(d.kind, d.labels, perm)
    brackets = [
        shift_block(d.kind, d.size, map_block(d.kind, d.size, b, perm), shift)
        for b in d.brackets
    ]
    return LabeledDiagram(d.kind, labels, brackets)


def twist(d: LabeledDiagram, b) -> LabeledDiagram:
    """Reflect everything inside bracket ``b``: labels and nested brackets."""
    b = tuple(b)
    if b not in d.brackets:
        raise ValueError(f"bracket {b} is not in the diagram")
    return _apply(d, mirror_perm(d.kind, d.size, b))


def reflect(d: LabeledDiagram) -> LabeledDiagram:
    """Global reflection of a path diagram."""
    if d.kind != PATH:
        raise ValueError("only path diagrams carry a global reflection")
    size = d.size
    return _apply(d, [size - 1 - p for p in range(size)])


def moves(d: LabeledDiagram):
    for b in d.brackets:
        yield twist(d, b)
    if d.kind == PATH:
        yield reflect(d)


def orbit(d: LabeledDiagram) -> list:
    """Closure of ``d`` under twists (and reflection for paths), sorted."""
    seen = {d}
    queue = deque([d])
    while queue:
        x = queue.popleft()
        for y in moves(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


@dataclass(frozen=True)
class TwistClass:
    canonical: LabeledDiagram
    orbit_size: int

    @property
    def codim(self):
        return self.canonical.codim


def twist_class(d: LabeledDiagram) -> TwistClass:
    members = orbit(d)
    return TwistClass(members[0], len(members))
