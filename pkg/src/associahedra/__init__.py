"""Associahedra from bracketings, truncated simplices and twist-glued tilings."""

from .bracketings import (
    Bracket,
    PathBracketing,
    PathFrame,
    associahedron_frame,
    catalan,
    enumerate_bracketings,
    f_vector,
    face_poset,
    is_compatible,
    superimpose,
)
from .circle import CircleBracketing, CircleFrame, count_product_types, verify_B_equals_A
from .poset import GradedPoset, is_isomorphism, poset_isomorphic
from .polytopes import (
    SimplePolytope,
    TruncationSchedule,
    build_circle_product,
    build_interval_simplex,
    collision_faces,
    iterated_truncation,
    simplex,
    truncate_face,
    truncated_matches_associahedron,
)

__version__ = "0.1.0"
