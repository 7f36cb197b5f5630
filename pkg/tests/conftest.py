"""Shared fixtures and brute-force oracles, independent of the package's search code."""

from __future__ import annotations

import itertools

import networkx as nx
import pytest

from polyrecon.fixtures import all_fixtures, catalog_lattice, solid
from polyrecon.graphs import Graph


def cycle_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def wheel_graph(k: int) -> Graph:
    return Graph(k + 1, frozenset({(i, (i + 1) % k) for i in range(k)} | {(i, k) for i in range(k)}))


def naive_closure(n, facets):
    faces = {frozenset(range(n))} | {frozenset(f) for f in facets}
    while True:
        new = {a & b for a in faces for b in faces} - faces
        if not new:
            break
        faces |= new
    return faces | {frozenset()}


def brute_orientations(g: Graph, sink=None):
    """Every acyclic orientation as a dict edge -> head, via networkx."""
    edges = g.sorted_edges
    for bits in itertools.product((0, 1), repeat=len(edges)):
        heads = {e: (e[1] if b == 0 else e[0]) for e, b in zip(edges, bits)}
        if sink is not None and any(h != sink for e, h in heads.items() if sink in e):
            continue
        D = nx.DiGraph()
        D.add_nodes_from(range(g.vertex_count))
        D.add_edges_from((a if h == b else b, h) for (a, b), h in heads.items())
        if nx.is_directed_acyclic_graph(D):
            yield heads


def brute_indegrees(g: Graph, heads) -> list[int]:
    indeg = [0] * g.vertex_count
    for h in heads.values():
        indeg[h] += 1
    return indeg


def brute_initial_krics(g: Graph, heads, k):
    out = []
    for r in range(1, g.vertex_count + 1):
        for s in itertools.combinations(range(g.vertex_count), r):
            S = set(s)
            if any((a in S) != (b in S) and h in S for (a, b), h in heads.items()):
                continue
            sub = nx.Graph()
            sub.add_nodes_from(S)
            sub.add_edges_from(e for e in g.edges if e[0] in S and e[1] in S)
            if all(d == k for _, d in sub.degree()) and nx.is_connected(sub):
                out.append(frozenset(S))
    return sorted(out, key=sorted)


SMALL_SOLIDS = ["tetrahedron", "cube", "triangular_prism", "pentagonal_prism",
                "square_pyramid", "pentagonal_pyramid"]


@pytest.fixture(scope="session")
def fixtures_by_name():
    return all_fixtures()


@pytest.fixture
def tetra():
    return solid("tetrahedron")


@pytest.fixture
def cube():
    return solid("cube")


@pytest.fixture
def pyramid():
    return solid("square_pyramid")


@pytest.fixture
def p3():
    return catalog_lattice("P3")


@pytest.fixture
def p4():
    return catalog_lattice("P4")


@pytest.fixture
def p8():
    return catalog_lattice("P8")


def embedding_faces(g: Graph) -> set[frozenset[int]]:
    """Vertex sets of the faces of a planar embedding of ``g`` (None if not planar)."""
    G = nx.Graph(list(g.edges))
    ok, emb = nx.check_planarity(G)
    if not ok:
        return None
    seen = set()
    faces = set()
    for u, v in emb.edges():
        if (u, v) in seen:
            continue
        face = emb.traverse_face(u, v, mark_half_edges=seen)
        faces.add(frozenset(face))
    return faces


def steinitz_ok(L) -> bool:
    """A 3-dimensional lattice is a 3-polytope's iff its graph is planar and
    3-connected and its facets are the faces of the (unique) embedding."""
    g = L.graph
    G = nx.Graph(list(g.edges))
    if nx.node_connectivity(G) < 3:
        return False
    faces = embedding_faces(g)
    return faces is not None and faces == set(L.facets)


def euler_sum(fv) -> int:
    d = len(fv) - 1
    return sum((-1) ** i * f for i, f in enumerate(fv[:d])), 1 - (-1) ** d


def acyclic_orientation_count(edges) -> int:
    """Deletion-contraction: a(G) = a(G - e) + a(G / e), parallel edges merged."""
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def count(es: frozenset) -> int:
        if not es:
            return 1
        e = min(es)
        a, b = e
        rest = es - {e}
        contracted = frozenset(
            tuple(sorted((a if u == b else u, a if v == b else v))) for u, v in rest
        )
        contracted = frozenset(p for p in contracted if p[0] != p[1])
        return count(rest) + count(contracted)

    return count(frozenset(tuple(sorted(e)) for e in edges))


# -- acceptance report ---------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
