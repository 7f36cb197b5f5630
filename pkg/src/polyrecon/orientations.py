"""Acyclic orientations and the objective ``f^O = sum_v 2**indeg(v)``.

Two routes to the minimisers are provided.  :func:`enumerate_acyclic` and
:func:`min_f_O` walk the orientations themselves (edge-by-edge search with
cycle pruning and a branch-and-bound on the partial objective) and return
explicit witnesses; they are exhaustive and therefore capped.
:class:`MinimizerProfile` answers the questions the reconstruction
algorithms actually ask ("what is the minimum?", "which vertex sets are
initial for some minimiser?") without listing witnesses, via a dynamic
programme over vertex subsets: every acyclic orientation has a linear
extension with the same in-degrees, and a set is initial exactly when it
can be placed first in such an order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import CapacityError, DegeneracyError, InputError
from .face_lattice import FaceLattice, total_faces
from .graphs import Graph, mask_iter, mask_to_set, regular_degree, set_to_mask

#: Largest edge count accepted by the exhaustive enumerators.
MAX_ENUMERATION_EDGES = 28

#: Largest number of free vertices accepted by :class:`MinimizerProfile`.
MAX_PROFILE_VERTICES = 22


class Orientation:
    """A direction for every edge of ``graph``; construction rejects cycles.

    ``heads`` is either a mapping ``edge -> head vertex`` or a sequence of
    heads aligned with ``graph.sorted_edges``.
    """

    def __init__(self, graph: Graph, heads: Mapping[tuple[int, int], int] | Sequence[int]):
        edges = graph.sorted_edges
        if isinstance(heads, Mapping):
            norm = {tuple(sorted(e)): h for e, h in heads.items()}
            if set(norm) != set(edges):
                raise InputError("orientation must direct every edge of the graph exactly once")
            heads = [norm[e] for e in edges]
        heads = tuple(heads)
        if len(heads) != len(edges):
            raise InputError("one head per edge is required")
        out = [0] * graph.vertex_count
        inn = [0] * graph.vertex_count
        for (a, b), h in zip(edges, heads):
            if h == b:
                out[a] |= 1 << b
                inn[b] |= 1 << a
            elif h == a:
                out[b] |= 1 << a
                inn[a] |= 1 << b
            else:
                raise InputError(f"head {h} is not an endpoint of edge {(a, b)}")
        self._set(graph, heads, tuple(out), tuple(inn))
        if self.topological_order() is None:
            raise InputError("orientation contains a directed cycle")

    @classmethod
    def _trusted(cls, graph, heads, out, inn) -> "Orientation":
        o = cls.__new__(cls)
        o._set(graph, tuple(heads), tuple(out), tuple(inn))
        return o

    def _set(self, graph, heads, out, inn):
        self.graph = graph
        self.heads = heads
        self.out_masks = out
        self.in_masks = inn
        self.indegree = tuple(m.bit_count() for m in inn)

    @cached_property
    def direction(self) -> dict[tuple[int, int], int]:
        return dict(zip(self.graph.sorted_edges, self.heads))

    def topological_order(self) -> list[int] | None:
        n = self.graph.vertex_count
        indeg = list(self.indegree)
        ready = [v for v in range(n) if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop()
            order.append(v)
            for u in mask_iter(self.out_masks[v]):
                indeg[u] -= 1
                if indeg[u] == 0:
                    ready.append(u)
        return order if len(order) == n else None

    def sinks(self) -> list[int]:
        return [v for v in range(self.graph.vertex_count) if not self.out_masks[v]]

    def sources(self) -> list[int]:
        return [v for v in range(self.graph.vertex_count) if not self.in_masks[v]]

    def reversed(self) -> "Orientation":
        heads = [a if h == b else b for (a, b), h in zip(self.graph.sorted_edges, self.heads)]
        return Orientation._trusted(self.graph, heads, self.in_masks, self.out_masks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Orientation):
            return NotImplemented
        return self.graph == other.graph and self.heads == other.heads

    def __hash__(self) -> int:
        return hash((self.graph.sorted_edges, self.heads))

    def __repr__(self) -> str:
        arcs = [f"{a}->{b}" if h == b else f"{b}->{a}" for (a, b), h in self.direction.items()]
        return f"Orientation({', '.join(arcs)})"


def f_O(o: Orientation) -> int:
    """``sum_v 2**indeg(v)``, exact."""
    return sum(1 << d for d in o.indegree)


# -- exhaustive search --------------------------------------------------------


def _check_cap(g: Graph) -> None:
    if len(g.edges) > MAX_ENUMERATION_EDGES:
        raise CapacityError(
            f"exhaustive orientation search is capped at {MAX_ENUMERATION_EDGES} edges, "
            f"graph has {len(g.edges)}"
        )


def _reaches(out: list[int], src: int, dst: int) -> bool:
    seen = 1 << src
    frontier = seen
    target = 1 << dst
    while frontier:
        if frontier & target:
            return True
        nxt = 0
        for v in mask_iter(frontier):
            nxt |= out[v]
        frontier = nxt & ~seen
        seen |= frontier
    return False


def _search(g: Graph, forced: Mapping[tuple[int, int], int] | None, best: list[int] | None):
    """Yield ``(heads, out, inn)`` for acyclic orientations, edges in sorted order.

    Each edge tries its larger endpoint as head first.  With ``best`` given
    (a one-element list holding the incumbent value), branches whose
    partial objective already exceeds it are cut; ties are kept.
    """
    edges = g.sorted_edges
    choices = []
    for a, b in edges:
        h = None if forced is None else forced.get((a, b))
        if h is None:
            choices.append((b, a))
        elif h in (a, b):
            choices.append((h,))
        else:
            raise InputError(f"forced head {h} is not an endpoint of {(a, b)}")
    n = g.vertex_count
    out = [0] * n
    inn = [0] * n
    indeg = [0] * n
    heads = [0] * len(edges)
    m = len(edges)
    lower = [n]  # sum of 2**indeg over all vertices so far

    def rec(i: int):
        if best is not None and lower[0] > best[0]:
            return
        if i == m:
            yield heads, out, inn
            return
        a, b = edges[i]
        for h in choices[i]:
            t = a if h == b else b
            if _reaches(out, h, t):
                continue
            out[t] |= 1 << h
            inn[h] |= 1 << t
            lower[0] += 1 << indeg[h]
            indeg[h] += 1
            heads[i] = h
            yield from rec(i + 1)
            indeg[h] -= 1
            lower[0] -= 1 << indeg[h]
            out[t] ^= 1 << h
            inn[h] ^= 1 << t

    yield from rec(0)


def enumerate_acyclic(g: Graph, forced: Mapping[tuple[int, int], int] | None = None) -> Iterator[Orientation]:
    """Every acyclic orientation of ``g`` exactly once, in a deterministic order.

    ``forced`` optionally fixes the head of some edges.
    """
    _check_cap(g)
    forced = None if forced is None else {tuple(sorted(e)): h for e, h in forced.items()}
    for heads, out, inn in _search(g, forced, None):
        yield Orientation._trusted(g, heads, out, inn)


def _minimise(g: Graph, forced) -> tuple[int, list[Orientation]]:
    _check_cap(g)
    best = [float("inf")]
    witnesses: list[Orientation] = []
    for heads, out, inn in _search(g, forced, best):
        o = Orientation._trusted(g, heads, out, inn)
        val = f_O(o)
        if val < best[0]:
            best[0] = val
            witnesses = [o]
        elif val == best[0]:
            witnesses.append(o)
    if not witnesses:
        raise InputError("no acyclic orientation satisfies the constraints")
    return int(best[0]), witnesses


def min_f_O(g: Graph) -> tuple[int, list[Orientation]]:
    """Minimum of ``f^O`` over acyclic orientations and every orientation attaining it."""
    return _minimise(g, None)


def sink_constraints(g: Graph, y: int) -> dict[tuple[int, int], int]:
    if not 0 <= y < g.vertex_count:
        raise InputError(f"{y} is not a vertex")
    return {e: y for e in g.sorted_edges if y in e}


def min_f_O_with_sink(g: Graph, y: int) -> tuple[int, list[Orientation]]:
    """As :func:`min_f_O`, restricted to orientations in which ``y`` is a sink."""
    return _minimise(g, sink_constraints(g, y))


# -- initial sets -------------------------------------------------------------


def is_initial(o: Orientation, s: Iterable[int]) -> bool:
    """Every edge leaving ``s`` points away from it."""
    S = set_to_mask(s)
    return all(not (o.in_masks[v] & ~S) for v in mask_iter(S))


def _ancestor_masks(o: Orientation) -> list[int]:
    down = [0] * o.graph.vertex_count
    for v in o.topological_order():
        m = 1 << v
        for u in mask_iter(o.in_masks[v]):
            m |= down[u]
        down[v] = m
    return down


def initial_krics(o: Orientation, k: int) -> list[frozenset[int]]:
    """Vertex sets of the k-regular connected induced subgraphs that are initial for ``o``.

    An initial set is down-closed, and its maximal elements have in-degree
    exactly ``k``; the search grows unions of down-closures of such
    candidates in topological order, pruning as soon as any vertex exceeds
    degree ``k``.
    """
    adj = o.graph.masks
    down = _ancestor_masks(o)
    indeg = o.indegree
    order = o.topological_order()
    cands = [
        v for v in order
        if indeg[v] == k and all(indeg[u] <= k for u in mask_iter(down[v]))
        and all((adj[u] & down[v]).bit_count() <= k for u in mask_iter(down[v]))
    ]
    found: set[int] = set()

    def grow(i: int, S: int):
        if i == len(cands):
            if S and regular_degree(adj, S) == k:
                found.add(S)
            return
        grow(i + 1, S)
        v = cands[i]
        if S >> v & 1:
            return
        S2 = S | down[v]
        if all((adj[u] & S2).bit_count() <= k for u in mask_iter(S2)):
            grow(i + 1, S2)

    grow(0, 0)
    return sorted((mask_to_set(S) for S in found), key=sorted)


# -- minimiser profile ---------------------------------------------------------


class MinimizerProfile:
    """Exact minimum of ``f^O`` and the sets that are initial for some minimiser.

    With ``sink`` given the class is restricted to orientations in which
    that vertex is a sink; only sets avoiding the sink are then reported.

    ``up[S]`` is the cheapest cost of placing the vertices of ``S`` first in
    a linear order, ``down[S]`` the cheapest cost of placing the rest
    afterwards; ``S`` is initial for a minimiser iff ``up + down`` equals
    the minimum.
    """

    def __init__(self, g: Graph, sink: int | None = None):
        self.graph = g
        self.sink = sink
        if sink is not None and not 0 <= sink < g.vertex_count:
            raise InputError(f"{sink} is not a vertex")
        active = [v for v in range(g.vertex_count) if v != sink]
        m = len(active)
        if m > MAX_PROFILE_VERTICES:
            raise CapacityError(
                f"minimiser profile is capped at {MAX_PROFILE_VERTICES} vertices, got {m}"
            )
        pos = {v: i for i, v in enumerate(active)}
        nb = np.array(
            [sum(1 << pos[u] for u in mask_iter(g.masks[v]) if u in pos) for v in active],
            dtype=np.int64,
        )
        self._active = active
        self._m = m
        subsets = np.arange(1 << m, dtype=np.int64)
        size = np.bitwise_count(subsets)
        layers = [subsets[size == k] for k in range(m + 1)]
        big = np.iinfo(np.int64).max // 4
        up = np.full(1 << m, big, dtype=np.int64)
        up[0] = 0
        for k in range(1, m + 1):
            layer = layers[k]
            for i in range(m):
                sel = layer[(layer >> i) & 1 == 1]
                prev = sel ^ (1 << i)
                cost = np.left_shift(1, np.bitwise_count(prev & nb[i]).astype(np.int64))
                up[sel] = np.minimum(up[sel], up[prev] + cost)
        down = np.full(1 << m, big, dtype=np.int64)
        down[-1] = 0
        for k in range(m - 1, -1, -1):
            layer = layers[k]
            for i in range(m):
                sel = layer[(layer >> i) & 1 == 0]
                cost = np.left_shift(1, np.bitwise_count(sel & nb[i]).astype(np.int64))
                down[sel] = np.minimum(down[sel], down[sel | (1 << i)] + cost)
        self._best = int(up[-1])
        self._opt = np.nonzero(up + down == self._best)[0]
        self._nb = nb
        self.value = self._best + (0 if sink is None else 1 << g.degree(sink))

    def _to_original(self, cm: int) -> int:
        out = 0
        for i in mask_iter(cm):
            out |= 1 << self._active[i]
        return out

    def initial_set_masks(self) -> list[int]:
        """All sets (as masks, sink excluded) initial for some minimiser."""
        return [self._to_original(int(c)) for c in self._opt]

    def is_minimizer_initial(self, s: Iterable[int]) -> bool:
        S = set_to_mask(s)
        if self.sink is not None and S >> self.sink & 1:
            raise InputError("sets containing the sink are not tracked")
        pos = {v: i for i, v in enumerate(self._active)}
        cm = sum(1 << pos[v] for v in mask_iter(S))
        idx = np.searchsorted(self._opt, cm)
        return bool(idx < len(self._opt) and self._opt[idx] == cm)

    def initial_krics(self, k: int | None = None) -> list[tuple[frozenset[int], int]]:
        """``(vertex set, degree)`` for each regular connected minimiser-initial set.

        Restricted to degree ``k`` when given.
        """
        opt = self._opt[self._opt != 0]
        lo = np.full(len(opt), 1 << 30, dtype=np.int64)
        hi = np.full(len(opt), -1, dtype=np.int64)
        for i in range(self._m):
            member = (opt >> i) & 1 == 1
            deg = np.bitwise_count(opt & self._nb[i]).astype(np.int64)
            lo = np.where(member, np.minimum(lo, deg), lo)
            hi = np.where(member, np.maximum(hi, deg), hi)
        keep = lo == hi
        if k is not None:
            keep &= lo == k
        adj = [int(x) for x in self._nb]
        result = []
        for cm, deg in zip(opt[keep].tolist(), lo[keep].tolist()):
            if regular_degree(adj, cm) is not None:
                result.append((mask_to_set(self._to_original(cm)), deg))
        result.sort(key=lambda t: (t[1], sorted(t[0])))
        return result


# -- the three conditions -----------------------------------------------------


@dataclass(frozen=True)
class GoodConditions:
    unique_sink: bool
    simple_at_sink: bool
    full_star_face: bool

    @property
    def all(self) -> bool:
        return self.unique_sink and self.simple_at_sink and self.full_star_face


def good_conditions(L: FaceLattice, o: Orientation) -> GoodConditions:
    """Evaluate the three conditions that together characterise ``f^O = sum f_i``.

    * every non-empty face has exactly one sink in its induced orientation;
    * every face has degree equal to its dimension at each of its sinks;
    * every vertex ``v`` is a sink of some face that contains all edges into ``v``.
    """
    if o.graph is not L.graph and o.graph != L.graph:
        raise InputError("orientation is not an orientation of the lattice's graph")
    adj = L.graph.masks
    out = o.out_masks
    inn = o.in_masks
    unique = simple = True
    starred = 0
    for F in L.face_masks:
        if not F:
            continue
        dim = L.rank_of_mask(F) - 1
        nsinks = 0
        for v in mask_iter(F):
            if out[v] & F:
                continue
            nsinks += 1
            if (adj[v] & F).bit_count() != dim:
                simple = False
            if not inn[v] & ~F:
                starred |= 1 << v
        if nsinks != 1:
            unique = False
    return GoodConditions(unique, simple, starred == L.top_mask)


def fo_lower_bound(L: FaceLattice) -> int:
    """``sum_i f_i``, the value no acyclic orientation can beat."""
    return total_faces(L)


# -- linear functionals -------------------------------------------------------


def linear_functional_orientation(g: Graph, coords: Sequence[Sequence], w: Sequence) -> Orientation:
    """Direct each edge toward the endpoint with the larger value of ``<coords[v], w>``.

    Arithmetic is exact (``Fraction``); equal values raise :class:`DegeneracyError`.
    """
    if len(coords) != g.vertex_count:
        raise InputError("one coordinate vector per vertex is required")
    w = [Fraction(x) for x in w]
    vals = []
    for p in coords:
        if len(p) != len(w):
            raise InputError("coordinate and functional dimensions differ")
        vals.append(sum(Fraction(x) * c for x, c in zip(p, w)))
    if len(set(vals)) != len(vals):
        raise DegeneracyError("functional takes equal values on two vertices; perturb it")
    heads = [a if vals[a] > vals[b] else b for a, b in g.sorted_edges]
    return Orientation(g, heads)


# -- file format --------------------------------------------------------------


def orientation_to_json(o: Orientation) -> str:
    arcs = [[a, b, "ab" if h == b else "ba"] for (a, b), h in o.direction.items()]
    return json.dumps({"edges": arcs}, separators=(", ", ": ")) + "\n"


def orientation_from_json(text: str, g: Graph | None = None) -> Orientation:
    """Parse an orientation file; the graph is inferred from the arcs unless given."""
    try:
        arcs = json.loads(text)["edges"]
        heads = {}
        for a, b, d in arcs:
            if d not in ("ab", "ba"):
                raise ValueError(f"direction must be 'ab' or 'ba', got {d!r}")
            heads[(a, b)] = b if d == "ab" else a
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed orientation file: {exc}") from None
    if g is None:
        n = 1 + max((max(e) for e in heads), default=-1)
        g = Graph(n, frozenset(heads))
    return Orientation(g, heads)
