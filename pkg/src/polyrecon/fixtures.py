"""Bundled polytopes.

The catalog polytopes P3..P12 live in ``data/polytopes.catalog`` and
are read verbatim.  The solids below are small 3-polytopes used to exercise
each reconstruction branch; the last three are 2-nearly simple (two
vertices of degree 4, all others of degree 3) and cover both adjacency
cases.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .face_lattice import FaceLattice, lattice_from_facets


def _prism(k: int) -> tuple[int, list[list[int]]]:
    bottom = list(range(k))
    top = [k + i for i in range(k)]
    sides = [[i, (i + 1) % k, k + (i + 1) % k, k + i] for i in range(k)]
    return 2 * k, [bottom, top] + sides


def _pyramid(k: int) -> tuple[int, list[list[int]]]:
    return k + 1, [list(range(k))] + [[i, (i + 1) % k, k] for i in range(k)]


def _cube() -> tuple[int, list[list[int]]]:
    return 8, [[v for v in range(8) if (v >> i) & 1 == b] for i in range(3) for b in (0, 1)]


def _hexagonal_roof() -> tuple[int, list[list[int]]]:
    # hexagon 0..5 under a ridge 6-7; both ridge ends have degree 4 and are adjacent
    return 8, [[0, 1, 2, 3, 4, 5], [6, 0, 1], [6, 1, 2], [6, 7, 2, 3],
               [7, 3, 4], [7, 4, 5], [7, 6, 5, 0]]


def _tetragonal_trapezohedron() -> tuple[int, list[list[int]]]:
    # apexes 0 and 1 of degree 4, upper ring 2..5, lower ring 6..9, kite faces
    up = [2, 3, 4, 5]
    lo = [6, 7, 8, 9]
    kites = [[0, up[i], lo[i], up[(i + 1) % 4]] for i in range(4)]
    kites += [[1, lo[i], up[(i + 1) % 4], lo[(i + 1) % 4]] for i in range(4)]
    return 10, kites


def _split_bipyramid_dual() -> tuple[int, list[list[int]]]:
    # dual of a pentagonal bipyramid with two pairs of triangles merged into
    # quadrilaterals; vertices 0 and 1 have degree 4, are not adjacent, and
    # share the face [0, 1, 2, 3]
    return 8, [[0, 1, 2, 3], [0, 4, 5, 6, 7], [0, 2, 4], [0, 3, 5],
               [1, 3, 5, 6], [1, 6, 7], [1, 2, 4, 7]]


SOLIDS = {
    "tetrahedron": lambda: (4, [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]),
    "cube": _cube,
    "triangular_prism": lambda: _prism(3),
    "pentagonal_prism": lambda: _prism(5),
    "square_pyramid": lambda: _pyramid(4),
    "pentagonal_pyramid": lambda: _pyramid(5),
    "hexagonal_roof": _hexagonal_roof,
    "tetragonal_trapezohedron": _tetragonal_trapezohedron,
    "split_bipyramid_dual": _split_bipyramid_dual,
}


def solid(name: str) -> FaceLattice:
    return _solid(name)


@lru_cache(maxsize=None)
def _solid(name: str) -> FaceLattice:
    n, facets = SOLIDS[name]()
    return lattice_from_facets(n, facets)


def catalog_text() -> str:
    return resources.files("polyrecon").joinpath("data/polytopes.catalog").read_text()


@lru_cache(maxsize=None)
def catalog_entries():
    from .census import parse_catalog

    return tuple(parse_catalog(catalog_text()))


def catalog_lattice(pid: str) -> FaceLattice:
    for e in catalog_entries():
        if e.id == pid:
            return e.lattice
    raise KeyError(pid)


def all_fixtures() -> dict[str, FaceLattice]:
    """Every bundled lattice, solids first, keyed by name."""
    out = {name: solid(name) for name in SOLIDS}
    out.update({e.id: e.lattice for e in catalog_entries()})
    return out
