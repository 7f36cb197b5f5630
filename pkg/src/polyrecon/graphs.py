"""Undirected simple graphs on dense integer vertex ids.

Vertex sets are passed around either as Python sets or as integer bitmasks
(bit ``v`` set iff vertex ``v`` is a member); the bitmask helpers at the
bottom of this module are what the search routines use internally.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CapacityError, InputError

#: Largest vertex count accepted by :func:`canonical_form`.
CANONICAL_MAX_VERTICES = 32


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with vertices ``0 .. vertex_count - 1``.

    ``edges`` may be given as any iterable of pairs; it is normalised to a
    frozenset of ``(a, b)`` tuples with ``a < b``.
    """

    vertex_count: int
    edges: frozenset

    def __post_init__(self):
        n = self.vertex_count
        if not isinstance(n, int) or n < 0:
            raise InputError(f"vertex_count must be a non-negative integer, got {n!r}")
        norm = set()
        for e in self.edges:
            a, b = e
            if a == b:
                raise InputError(f"self-loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise InputError(f"edge {tuple(e)} has an endpoint outside [0, {n})")
            pair = (a, b) if a < b else (b, a)
            if pair in norm:
                raise InputError(f"duplicate edge {pair}")
            norm.add(pair)
        object.__setattr__(self, "edges", frozenset(norm))

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as a bitmask."""
        adj = [0] * self.vertex_count
        for a, b in self.edges:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return tuple(adj)

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @property
    def full_mask(self) -> int:
        return (1 << self.vertex_count) - 1

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(mask_to_set(self.masks[v]))

    def degree(self, v: int) -> int:
        return self.masks[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.masks)

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.masks[a] >> b & 1)

    def is_connected(self) -> bool:
        return self.vertex_count > 0 and is_connected_mask(self.masks, self.full_mask)

    def __repr__(self) -> str:
        return f"Graph({self.vertex_count}, {list(self.sorted_edges)})"


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``s``, relabelled to ``0 .. |s|-1`` in increasing id order.

    Returns the subgraph and the id map (``ids[new] == old``).
    """
    ids = tuple(sorted(set(s)))
    for v in ids:
        if not 0 <= v < g.vertex_count:
            raise InputError(f"vertex {v} is not a vertex of the graph")
    pos = {v: i for i, v in enumerate(ids)}
    edges = [(pos[a], pos[b]) for a, b in g.edges if a in pos and b in pos]
    return Graph(len(ids), frozenset(edges)), ids


def is_k_regular_connected(g: Graph, k: int) -> bool:
    """True iff every vertex has degree exactly ``k`` and ``g`` is connected."""
    if g.vertex_count == 0:
        return False
    return all(d == k for d in g.degrees()) and g.is_connected()


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Image of ``g`` under the vertex map ``v -> perm[v]``."""
    if sorted(perm) != list(range(g.vertex_count)):
        raise InputError("perm must be a permutation of the vertex ids")
    return Graph(g.vertex_count, frozenset((perm[a], perm[b]) for a, b in g.edges))


# --------------------------------------------------------------------------
# canonical labelling
# --------------------------------------------------------------------------


def _refine(adj: Sequence[int], colors: list[int]) -> list[int]:
    # colour refinement; colours stay ordered consistently with the input order
    n = len(adj)
    ncls = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            nb = sorted(colors[u] for u in mask_iter(adj[v]))
            sigs.append((colors[v], tuple(nb)))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if len(order) == ncls:
            return new
        colors, ncls = new, len(order)


def _leaf_code(adj: Sequence[int], colors: list[int], base: Sequence[int]) -> bytes:
    n = len(adj)
    order = sorted(range(n), key=colors.__getitem__)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    bits = 0
    idx = 0
    for i in range(n):
        row = adj[order[i]]
        for j in range(i + 1, n):
            if row >> order[j] & 1:
                bits |= 1 << idx
            idx += 1
    head = n.to_bytes(2, "big") + bytes(base[v] & 0xFF for v in order)
    return head + bits.to_bytes((idx + 7) // 8, "big")


def _same_orbit(v: int, reps: list[int], gens: list[list[int]], n: int) -> bool:
    if not gens:
        return False
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in gens:
        for a, b in enumerate(g):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    root = find(v)
    return any(find(r) == root for r in reps)


def canonical_form(g: Graph, colors: Sequence[int] | None = None) -> bytes:
    """Deterministic certificate; equal for two graphs iff they are isomorphic.

    Individualisation-refinement: colour refinement seeded with degrees, then
    backtracking over the first non-singleton cell; the certificate is the
    lexicographically least adjacency code over all discrete leaves.  Leaves
    with equal codes yield automorphisms, which prune equivalent siblings and
    let the search unwind past subtrees it has already covered.  Optional
    ``colors`` (small non-negative ints) restrict to colour-preserving maps.
    Capped at :data:`CANONICAL_MAX_VERTICES` vertices.
    """
    n = g.vertex_count
    if n > CANONICAL_MAX_VERTICES:
        raise CapacityError(
            f"canonical_form supports at most {CANONICAL_MAX_VERTICES} vertices, got {n}"
        )
    adj = g.masks
    base = list(colors) if colors is not None else [0] * n
    if len(base) != n:
        raise InputError("colors must have one entry per vertex")
    if any(not 0 <= c < 256 for c in base):
        raise InputError("colors must be integers in [0, 256)")
    start = [(base[v], adj[v].bit_count()) for v in range(n)]
    rank = {c: i for i, c in enumerate(sorted(set(start)))}
    best: list[bytes | None] = [None]
    first_leaf: dict[bytes, list[int]] = {}
    leftmost: list = []  # (code, path) of the first leaf reached
    autos: list[list[int]] = []

    def search(cols: list[int], path: tuple[int, ...]) -> int | None:
        # returns a depth to unwind to, or None to carry on normally
        cols = _refine(adj, cols)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(cols):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            code = _leaf_code(adj, cols, base)
            order = sorted(range(n), key=cols.__getitem__)
            seen = first_leaf.get(code)
            if seen is None:
                first_leaf[code] = order
                if not leftmost:
                    leftmost.extend((code, path))
                if best[0] is None or code < best[0]:
                    best[0] = code
                return None
            perm = [0] * n
            for a, b in zip(seen, order):
                perm[a] = b
            autos.append(perm)
            if code == leftmost[0]:
                # the automorphism fixes the common prefix with the leftmost
                # path, so the sibling subtree there is already covered
                lp = leftmost[1]
                depth = 0
                while depth < len(path) and depth < len(lp) and path[depth] == lp[depth]:
                    depth += 1
                return depth
            return None
        done: list[int] = []
        here = len(path)
        for v in target:
            # skip v when an automorphism fixing the path maps an explored sibling onto it
            if done and _same_orbit(v, done, [a for a in autos if all(a[p] == p for p in path)], n):
                continue
            done.append(v)
            nxt = [2 * c for c in cols]
            nxt[v] -= 1
            jump = search(nxt, path + (v,))
            if jump is not None and jump < here:
                return jump
        return None

    search([rank[s] for s in start], ())
    return best[0] if best[0] is not None else (0).to_bytes(2, "big")


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.vertex_count != g2.vertex_count or len(g1.edges) != len(g2.edges):
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1) == canonical_form(g2)


# --------------------------------------------------------------------------
# file format
# --------------------------------------------------------------------------


def graph_to_json(g: Graph) -> str:
    """``{"vertices": n, "edges": [[a, b], ...]}`` with ``a < b``, edges sorted."""
    payload = {"vertices": g.vertex_count, "edges": [list(e) for e in g.sorted_edges]}
    return json.dumps(payload, separators=(", ", ": ")) + "\n"


def graph_from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
        n = data["vertices"]
        edges = [tuple(e) for e in data["edges"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed graph file: {exc}") from None
    if any(len(e) != 2 for e in edges):
        raise InputError("malformed graph file: every edge must have two endpoints")
    return Graph(n, frozenset(edges))


# --------------------------------------------------------------------------
# bitmask helpers
# --------------------------------------------------------------------------


def set_to_mask(s: Iterable[int]) -> int:
    m = 0
    for v in s:
        m |= 1 << v
    return m


def mask_iter(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def mask_to_set(m: int) -> frozenset[int]:
    return frozenset(mask_iter(m))


def is_connected_mask(adj: Sequence[int], s: int) -> bool:
    """Whether the subgraph induced on the vertex mask ``s`` is connected (and non-empty)."""
    if not s:
        return False
    seen = s & -s
    frontier = seen
    while frontier:
        nxt = 0
        for v in mask_iter(frontier):
            nxt |= adj[v]
        nxt &= s & ~seen
        seen |= nxt
        frontier = nxt
    return seen == s


def regular_degree(adj: Sequence[int], s: int) -> int | None:
    """Common degree of the subgraph induced on ``s`` if it is regular and connected."""
    k = None
    for v in mask_iter(s):
        d = (adj[v] & s).bit_count()
        if k is None:
            k = d
        elif d != k:
            return None
    if k is None or not is_connected_mask(adj, s):
        return None
    return k
