"""Cell-level comparison of the moduli complex with the projective sphere complex.

Cutting a circle diagram open at infinity gives a path diagram on the
remaining ``n + 2`` labels: arcs avoiding infinity keep their nodes, arcs
through infinity become the complementary interval.  The candidate map sends
each moduli cell to the twist class of the cut diagram.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..circle import Arc, cut_arc
from ..poset import is_isomorphism, poset_isomorphic
from .complexes import DEFAULT_LIMIT, MAXIMAL, MINIMAL, Moduli, ProjectiveSphere, build_complex
from .diagrams import CIRCLE, PATH, LabeledDiagram, orbit


def cut_at_infinity(d: LabeledDiagram) -> LabeledDiagram:
    """Path diagram obtained by removing the node at infinity (position 0)."""
    if d.kind != CIRCLE:
        raise ValueError("only circle diagrams can be cut")
    size = d.size
    brackets = [tuple(cut_arc(Arc(*a), size, 0)) for a in d.brackets]
    return LabeledDiagram(PATH, d.labels[1:], brackets)


@dataclass
class KapranovResult:
    n: int
    building_set: str
    isomorphic: bool
    top_cells: tuple  # (moduli, projective sphere)
    f_vectors: tuple
    mapping: dict = field(default=None, repr=False)  # moduli cell id -> sphere cell id
    oracle_isomorphic: bool = None
    diagnostics: list = field(default_factory=list)

    @property
    def oracle_agrees(self):
        return self.oracle_isomorphic == self.isomorphic

    def summary(self) -> str:
        verdict = "isomorphic" if self.isomorphic else "NOT isomorphic"
        lines = [
            f"n={self.n} ({self.building_set}): cell complexes {verdict}",
            f"top cells: moduli {self.top_cells[0]}, projective sphere {self.top_cells[1]}",
            f"f-vectors: moduli {self.f_vectors[0]}, projective sphere {self.f_vectors[1]}",
        ]
        if self.mapping is not None:
            lines.append(f"explicit map: {len(self.mapping)} cells matched")
        if self.oracle_isomorphic is not None:
            lines.append(f"generic isomorphism search: {'found' if self.oracle_isomorphic else 'none'}")
        lines.extend(self.diagnostics)
        return "\n".join(lines)


def explicit_map(moduli_cx, sphere_cx):
    """Map moduli cells to sphere cells by cutting at infinity.

    Returns ``(mapping, problems)``; ``mapping`` is ``None`` when the cut is
    not well defined on twist classes or not a bijection.
    """
    problems = []
    mapping = {}
    for cell in moduli_cx.cells:
        images = {sphere_cx.class_of[cut_at_infinity(m)] for m in orbit(cell.key)}
        if len(images) != 1:
            problems.append(f"moduli cell {cell.id} splits over sphere cells {sorted(images)}")
            continue
        mapping[cell.id] = images.pop()
    if problems:
        return None, problems
    if sorted(mapping.values()) != sorted(c.id for c in sphere_cx.cells):
        return None, ["cut map is not a bijection on cells"]
    return mapping, problems


def verify_kapranov(n: int, building_set=MINIMAL, limit=DEFAULT_LIMIT, oracle=True) -> KapranovResult:
    moduli = build_complex(Moduli(n + 3), building_set, limit)
    sphere = build_complex(ProjectiveSphere(n), building_set, limit)
    tops = (len(moduli.top_cells()), len(sphere.top_cells()))
    fvs = (moduli.f_vector(), sphere.f_vector())
    result = KapranovResult(n, building_set, False, tops, fvs)
    if fvs[0] != fvs[1]:
        result.diagnostics.append("cell counts per dimension differ")

    a, b = moduli.poset(), sphere.poset()
    if building_set == MINIMAL and fvs[0] == fvs[1]:
        mapping, problems = explicit_map(moduli, sphere)
        result.diagnostics.extend(problems)
        if mapping is not None and is_isomorphism(a, b, mapping):
            result.isomorphic = True
            result.mapping = mapping
        elif mapping is not None:
            result.diagnostics.append("cut map does not preserve incidence")
    if oracle:
        found = poset_isomorphic(a, b)
        result.oracle_isomorphic = found is not None
        if building_set == MAXIMAL:
            result.isomorphic = result.oracle_isomorphic
            if found is not None:
                result.mapping = found
    return result
