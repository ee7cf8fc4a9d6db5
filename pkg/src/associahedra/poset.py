"""Finite graded posets given by their Hasse diagrams.

A :class:`GradedPoset` stores elements, an integer rank per element and the
covering pairs ``(lower, upper)``.  For face posets the rank is the
codimension, so ``rank[lower] == rank[upper] + 1``; cell complexes use the
dimension instead.  Only consistency between the two posets being compared
matters for :func:`poset_isomorphic`.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable


@dataclass(frozen=True)
class GradedPoset:
    elements: tuple
    rank: dict
    covers: frozenset  # pairs (lower, upper): lower is a face of upper
    _up: dict = field(default=None, repr=False, compare=False)
    _down: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        up, down = defaultdict(list), defaultdict(list)
        for lo, hi in self.covers:
            up[lo].append(hi)
            down[hi].append(lo)
        object.__setattr__(self, "_up", dict(up))
        object.__setattr__(self, "_down", dict(down))

    @classmethod
    def build(cls, elements: Iterable[Hashable], rank, covers) -> "GradedPoset":
        elements = tuple(elements)
        rank = {e: rank[e] for e in elements}
        covers = frozenset(covers)
        known = set(elements)
        for lo, hi in covers:
            if lo not in known or hi not in known:
                raise ValueError(f"cover ({lo!r}, {hi!r}) uses an unknown element")
            if lo == hi:
                raise ValueError(f"self cover on {lo!r}")
        return cls(elements, rank, covers)

    def __len__(self):
        return len(self.elements)

    def upper_covers(self, x):
        return self._up.get(x, [])

    def lower_covers(self, x):
        return self._down.get(x, [])

    def rank_counts(self) -> tuple:
        """Number of elements per rank, from the smallest rank upward."""
        counts = Counter(self.rank.values())
        if not counts:
            return ()
        lo, hi = min(counts), max(counts)
        return tuple(counts.get(r, 0) for r in range(lo, hi + 1))

    def down_set(self, x) -> "GradedPoset":
        """Subposet of all elements below or equal to ``x``."""
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for z in self.lower_covers(y):
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        elements = [e for e in self.elements if e in seen]
        covers = [(lo, hi) for lo, hi in self.covers if lo in seen and hi in seen]
        return GradedPoset.build(elements, self.rank, covers)

    def to_json(self, describe=None) -> str:
        """``{"elements": [{"id", "codim", ...}], "covers": [[child, parent]]}``.

        ``describe`` maps an element to a dict of extra fields merged into its
        entry (for example its bracket list).
        """
        index = {e: i for i, e in enumerate(self.elements)}
        items = []
        for e in self.elements:
            entry = {"id": index[e], "codim": self.rank[e]}
            if describe is not None:
                entry.update(describe(e))
            items.append(entry)
        covers = sorted([index[lo], index[hi]] for lo, hi in self.covers)
        return json.dumps({"elements": items, "covers": covers}, indent=1)

    def to_dot(self, name="poset", label=str) -> str:
        index = {e: i for i, e in enumerate(self.elements)}
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for e in self.elements:
            text = label(e).replace('"', r"\"")
            lines.append(f'  n{index[e]} [label="{text}"];')
        for lo, hi in sorted((index[a], index[b]) for a, b in self.covers):
            lines.append(f"  n{lo} -> n{hi};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- isomorphism -------------------------------------------------------------
#
# Colour refinement on the disjoint union of both Hasse diagrams, followed by
# individualisation with backtracking.  Colours are shared between the two
# sides so that a colour class has the same meaning in each.


def _refine(colors, up, down):
    """Iterate colour refinement to a fixed point; colours are small ints."""
    n_classes = len(set(colors))
    while True:
        sigs = [
            (colors[i],
             tuple(sorted(colors[j] for j in up[i])),
             tuple(sorted(colors[j] for j in down[i])))
            for i in range(len(colors))
        ]
        table = {s: k for k, s in enumerate(sorted(set(sigs)))}
        colors = [table[s] for s in sigs]
        if len(table) == n_classes:
            return colors
        n_classes = len(table)


def _histograms_match(colors, n_a):
    return Counter(colors[:n_a]) == Counter(colors[n_a:])


def poset_isomorphic(a: GradedPoset, b: GradedPoset):
    """Return a rank- and cover-preserving bijection ``a -> b`` or ``None``."""
    if len(a) != len(b) or len(a.covers) != len(b.covers):
        return None
    if Counter(a.rank.values()) != Counter(b.rank.values()):
        return None

    elems = list(a.elements) + list(b.elements)
    n_a = len(a.elements)
    idx_a = {e: i for i, e in enumerate(a.elements)}
    idx_b = {e: n_a + i for i, e in enumerate(b.elements)}
    up = [[] for _ in elems]
    down = [[] for _ in elems]
    for lo, hi in a.covers:
        up[idx_a[lo]].append(idx_a[hi])
        down[idx_a[hi]].append(idx_a[lo])
    for lo, hi in b.covers:
        up[idx_b[lo]].append(idx_b[hi])
        down[idx_b[hi]].append(idx_b[lo])

    ranks = sorted(set(a.rank.values()))
    rank_id = {r: k for k, r in enumerate(ranks)}
    start = [rank_id[a.rank[e]] for e in a.elements] + [rank_id[b.rank[e]] for e in b.elements]
    colors = _refine(start, up, down)
    if not _histograms_match(colors, n_a):
        return None

    cover_set_b = {(idx_b[lo], idx_b[hi]) for lo, hi in b.covers}

    def search(colors):
        classes = defaultdict(list)
        for i, c in enumerate(colors):
            classes[c].append(i)
        # smallest non-singleton class on the a side
        open_classes = [m for m in classes.values() if len(m) > 2]
        if not open_classes:
            mapping = {}
            for members in classes.values():
                i, j = members
                mapping[i] = j
            for lo, hi in a.covers:
                if (mapping[idx_a[lo]], mapping[idx_a[hi]]) not in cover_set_b:
                    return None
            return mapping
        members = min(open_classes, key=lambda m: (len(m), m[0]))
        left = [i for i in members if i < n_a]
        right = [j for j in members if j >= n_a]
        i = left[0]
        fresh = max(colors) + 1
        for j in right:
            trial = list(colors)
            trial[i] = fresh
            trial[j] = fresh
            trial = _refine(trial, up, down)
            if not _histograms_match(trial, n_a):
                continue
            found = search(trial)
            if found is not None:
                return found
        return None

    found = search(colors)
    if found is None:
        return None
    return {a.elements[i]: b.elements[j - n_a] for i, j in found.items()}


def is_isomorphism(a: GradedPoset, b: GradedPoset, mapping) -> bool:
    """Check that ``mapping`` is a rank- and cover-preserving bijection."""
    if set(mapping) != set(a.elements) or set(mapping.values()) != set(b.elements):
        return False
    if len(set(mapping.values())) != len(mapping):
        return False
    if any(a.rank[x] != b.rank[mapping[x]] for x in a.elements):
        return False
    image = {(mapping[lo], mapping[hi]) for lo, hi in a.covers}
    return image == set(b.covers)
