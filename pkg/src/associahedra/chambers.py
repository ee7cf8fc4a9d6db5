"""Numeric chamber map from point configurations on a line to the braid sphere.

Indices in chamber descriptors are 1-based, matching the coordinate names
``x_1, ..., x_n``.  This module is a floating-point cross-check of the
combinatorial ones and carries a tie tolerance ``eps``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_EPS = 1e-9


class DegenerateConfiguration(ValueError):
    """All points coincide: the configuration is the excluded cone point."""


def basis_vectors(n: int) -> np.ndarray:
    """Rows ``a_i = -(e_1 + ... + e_n) + n e_i`` as an exact integer array."""
    if n < 2:
        raise ValueError("need at least two points")
    return n * np.eye(n, dtype=np.int64) - np.ones((n, n), dtype=np.int64)


def gram_matrix(n: int) -> np.ndarray:
    a = basis_vectors(n)
    return a @ a.T


@dataclass(frozen=True)
class ChamberDescriptor:
    """Ordered set partition of ``1..n``: blocks of tied indices in increasing order."""

    blocks: tuple

    @property
    def is_strict(self):
        return all(len(b) == 1 for b in self.blocks)

    def ordering(self) -> tuple:
        return tuple(i for b in self.blocks for i in b)

    def reversed(self) -> "ChamberDescriptor":
        return ChamberDescriptor(tuple(reversed(self.blocks)))

    def __str__(self):
        return " < ".join("=".join(map(str, b)) for b in self.blocks)


def phi(v, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Send a configuration to the unit sphere of the sum-zero hyperplane."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or not np.all(np.isfinite(v)):
        raise ValueError("configuration must be a finite vector")
    w = v @ basis_vectors(len(v)).astype(float)
    norm = np.linalg.norm(w)
    if norm <= eps * max(1.0, np.abs(v).max()):
        raise DegenerateConfiguration("constant configuration has no image on the sphere")
    return w / norm


def chamber_of(p, eps: float = DEFAULT_EPS) -> ChamberDescriptor:
    p = np.asarray(p, dtype=float)
    order = np.argsort(p, kind="stable")
    blocks = [[int(order[0]) + 1]]
    for prev, cur in zip(order, order[1:]):
        if abs(p[cur] - p[prev]) <= eps:
            blocks[-1].append(int(cur) + 1)
        else:
            blocks.append([int(cur) + 1])
    return ChamberDescriptor(tuple(tuple(sorted(b)) for b in blocks))


def projective_identify(p, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Representative of ``{p, -p}`` whose first non-negligible coordinate is positive."""
    p = np.asarray(p, dtype=float)
    for x in p:
        if abs(x) > eps:
            return p if x > 0 else -p
    raise ValueError("zero vector has no projective class")


def projective_chamber(p, eps: float = DEFAULT_EPS) -> ChamberDescriptor:
    """Chamber of the projective sphere: an ordering up to reversal."""
    c = chamber_of(p, eps)
    r = c.reversed()
    return min(c, r, key=lambda d: d.blocks)


def sample_configurations(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    return rng.normal(size=(count, n))


def sampling_report(n: int, count: int, seed: int = 0, eps: float = DEFAULT_EPS):
    """Rows ``(input, image, chamber, matches_sort_order)`` for random draws."""
    rng = np.random.default_rng(seed)
    rows = []
    for v in sample_configurations(n, count, rng):
        p = phi(v, eps)
        c = chamber_of(p, eps)
        expected = tuple(int(i) + 1 for i in np.argsort(v, kind="stable"))
        rows.append((v, p, c, c.ordering() == expected and c.is_strict))
    return rows


def count_projective_chambers(n_points: int, samples: int, seed: int = 0) -> int:
    """Distinct projective chambers hit by random sampling."""
    rng = np.random.default_rng(seed)
    seen = set()
    for v in sample_configurations(n_points, samples, rng):
        seen.add(projective_chamber(projective_identify(phi(v))))
    return len(seen)
