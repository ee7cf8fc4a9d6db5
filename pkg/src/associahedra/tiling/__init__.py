"""Twist-glued cell complexes tiled by associahedra."""

from .complexes import (
    DEFAULT_LIMIT,
    MAXIMAL,
    MINIMAL,
    CellComplex,
    Moduli,
    ProjectiveSphere,
    build_complex,
    chamber_census,
    chamber_counts_equal,
    classify_surface,
    enumerate_tiles,
    euler_characteristic,
    incidence_multiplicities,
    space_for,
    verify_right_angled,
)
from .diagrams import LabeledDiagram, orbit, reflect, twist, twist_class
from .kapranov import KapranovResult, cut_at_infinity, verify_kapranov
from .polygons import build_polygon_complex, describe_census, polygon_census

__all__ = [
    "DEFAULT_LIMIT", "MAXIMAL", "MINIMAL", "CellComplex", "Moduli", "ProjectiveSphere",
    "build_complex", "chamber_census", "chamber_counts_equal", "classify_surface",
    "enumerate_tiles", "euler_characteristic", "incidence_multiplicities", "space_for",
    "verify_right_angled", "LabeledDiagram", "orbit", "reflect", "twist", "twist_class",
    "KapranovResult", "cut_at_infinity", "verify_kapranov", "build_polygon_complex",
    "describe_census", "polygon_census",
]
