"""Bracketings of a path and the face poset of the associahedron.

Nodes are indexed from 0 over the whole path, fixed endpoints included.  A
bracket is a closed interval of node positions; a bracketing is a laminar
family of brackets (any two nested or disjoint).  The codimension of the
face a bracketing labels is its number of brackets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import NamedTuple

from .poset import GradedPoset


class Bracket(NamedTuple):
    start: int
    end: int

    @property
    def size(self):
        return self.end - self.start + 1

    def contains(self, other: "Bracket") -> bool:
        return self.start <= other.start and other.end <= self.end

    def nodes(self):
        return range(self.start, self.end + 1)

    def __str__(self):
        return f"({self.start},{self.end})"


def nested_or_disjoint(a: Bracket, b: Bracket) -> bool:
    if a.end < b.start or b.end < a.start:
        return True
    return a.contains(b) or b.contains(a)


@dataclass(frozen=True)
class PathFrame:
    """A path of ``num_free`` free nodes, optionally between two fixed ends.

    With ``fixed_ends`` the path models the unit interval with its endpoints
    pinned, and positions ``0`` and ``num_free + 1`` are the fixed nodes.
    """

    num_free: int
    fixed_ends: bool = False

    def __post_init__(self):
        if self.num_free < 1:
            raise ValueError("a path frame needs at least one free node")

    @property
    def num_nodes(self):
        return self.num_free + 2 if self.fixed_ends else self.num_free

    @property
    def fixed_positions(self):
        if self.fixed_ends:
            return (0, self.num_nodes - 1)
        return ()

    @property
    def max_codim(self):
        return self.num_nodes - 2 if self.fixed_ends else max(self.num_free - 2, 0)

    def is_valid_bracket(self, b: Bracket) -> bool:
        if not (0 <= b.start and b.end < self.num_nodes and b.end - b.start >= 1):
            return False
        if self.fixed_ends:
            return sum(1 for p in self.fixed_positions if b.start <= p <= b.end) <= 1
        return b.size <= self.num_free - 1

    def brackets(self) -> list:
        """All valid brackets, in lexicographic order."""
        n = self.num_nodes
        out = []
        for s in range(n):
            for e in range(s + 1, n):
                b = Bracket(s, e)
                if self.is_valid_bracket(b):
                    out.append(b)
        return out


@dataclass(frozen=True)
class PathBracketing:
    frame: PathFrame
    brackets: frozenset

    def __post_init__(self):
        object.__setattr__(self, "brackets", frozenset(Bracket(*b) for b in self.brackets))
        for b in self.brackets:
            if not self.frame.is_valid_bracket(b):
                raise ValueError(f"bracket {b} is not valid on {self.frame}")
        bs = sorted(self.brackets)
        for i, a in enumerate(bs):
            for b in bs[i + 1:]:
                if not nested_or_disjoint(a, b):
                    raise ValueError(f"brackets {a} and {b} overlap")

    @property
    def codim(self):
        return len(self.brackets)

    def sorted_brackets(self) -> tuple:
        return tuple(sorted(self.brackets))

    def serialize(self) -> str:
        return "".join(str(b) for b in self.sorted_brackets())

    def __str__(self):
        return "{" + ",".join(str(b) for b in self.sorted_brackets()) + "}"


def _laminar_families(candidates, limit):
    """Every laminar subfamily of ``candidates`` with at most ``limit`` members."""
    out = []

    def grow(start, chosen):
        out.append(tuple(chosen))
        if len(chosen) == limit:
            return
        for i in range(start, len(candidates)):
            b = candidates[i]
            if all(nested_or_disjoint(b, c) for c in chosen):
                chosen.append(b)
                grow(i + 1, chosen)
                chosen.pop()

    grow(0, [])
    return out


def enumerate_bracketings(frame: PathFrame, codim: int | None = None) -> list:
    """All bracketings of ``frame``, optionally only those with ``codim`` brackets.

    Ordered lexicographically by the sorted bracket tuple, so the empty
    bracketing comes first.
    """
    if codim is not None and codim < 0:
        raise ValueError("codimension must be non-negative")
    if codim is not None and codim > frame.max_codim:
        return []
    families = _laminar_families(frame.brackets(), frame.max_codim)
    assert max(len(f) for f in families) == frame.max_codim
    if codim is not None:
        families = [f for f in families if len(f) == codim]
    families.sort()
    return [PathBracketing(frame, f) for f in families]


def _same_frame(a: PathBracketing, b: PathBracketing):
    if a.frame != b.frame:
        raise ValueError(f"frame mismatch: {a.frame} vs {b.frame}")


def is_compatible(a: PathBracketing, b: PathBracketing) -> bool:
    _same_frame(a, b)
    union = sorted(a.brackets | b.brackets)
    return all(
        nested_or_disjoint(x, y) for i, x in enumerate(union) for y in union[i + 1:]
    )


def superimpose(a: PathBracketing, b: PathBracketing) -> PathBracketing:
    if not is_compatible(a, b):
        raise ValueError(f"bracketings {a} and {b} are not compatible")
    return PathBracketing(a.frame, a.brackets | b.brackets)


@lru_cache(maxsize=16)
def face_poset(frame: PathFrame) -> GradedPoset:
    """The poset of bracketings, ranked by codimension.

    Covers are ``(finer, coarser)`` where the finer bracketing has exactly
    one extra bracket.
    """
    elements = enumerate_bracketings(frame)
    present = set(elements)
    covers = []
    for x in elements:
        for b in x.brackets:
            y = PathBracketing(frame, x.brackets - {b})
            assert y in present
            covers.append((x, y))
    return GradedPoset.build(elements, {e: e.codim for e in elements}, covers)


def f_vector(frame: PathFrame) -> tuple:
    """Face counts by codimension, starting with the polytope itself."""
    counts = [0] * (frame.max_codim + 1)
    for bk in enumerate_bracketings(frame):
        counts[bk.codim] += 1
    return tuple(counts)


def associahedron_frame(n: int) -> PathFrame:
    """Frame whose bracketing poset is the face poset of ``K_n``."""
    return PathFrame(n)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def poset_to_json(poset: GradedPoset) -> str:
    return poset.to_json(lambda e: {"brackets": [list(b) for b in e.sorted_brackets()]})


def poset_to_dot(poset: GradedPoset) -> str:
    return poset.to_dot("bracketings", label=lambda e: str(e) if e.codim else "{}")


def bracketing_from_json(frame: PathFrame, brackets) -> PathBracketing:
    return PathBracketing(frame, [Bracket(*b) for b in brackets])


def load_poset_json(text: str):
    """Parse a poset export back into ``(elements, covers)`` lists of dicts/pairs."""
    data = json.loads(text)
    return data["elements"], [tuple(c) for c in data["covers"]]
