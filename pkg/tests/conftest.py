import pytest

from associahedra.tiling import Moduli, ProjectiveSphere, build_complex


@pytest.fixture(scope="session")
def complexes():
    """Glued complexes shared across tests, built once."""
    cache = {}

    def get(kind, n, building_set="minimal"):
        key = (kind, n, building_set)
        if key not in cache:
            space = ProjectiveSphere(n) if kind == "pv" else Moduli(n + 3)
            cache[key] = build_complex(space, building_set)
        return cache[key]

    return get
