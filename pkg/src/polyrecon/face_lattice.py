"""Face lattices stored as families of vertex sets.

A polytope's face lattice is atomic, so each face is identified with its
vertex set and the order is inclusion.  Ranks are chain lengths from the
empty face: vertices have rank 1, edges rank 2, the polytope itself rank
``d + 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InputError, NotPolytopalError, SurgeryError
from .graphs import Graph, canonical_form, is_connected_mask, mask_iter, mask_to_set, set_to_mask


class FaceLattice:
    """Validated, immutable face lattice on vertices ``0 .. vertex_count - 1``.

    The constructor takes any family of vertex sets; the empty set and the
    full vertex set are added.  Raises :class:`NotPolytopalError` unless the
    family is intersection-closed, graded, has the singletons as atoms, has
    2-element rank-2 faces and cycle-shaped rank-3 faces.
    """

    def __init__(self, vertex_count: int, faces: Iterable[Iterable[int]]):
        if vertex_count < 1:
            raise NotPolytopalError("a face lattice needs at least one vertex")
        self.vertex_count = vertex_count
        full = (1 << vertex_count) - 1
        masks = {0, full}
        for f in faces:
            m = set_to_mask(f)
            if m & ~full:
                raise NotPolytopalError(f"face {sorted(f)} has ids outside [0, {vertex_count})")
            masks.add(m)
        self._masks = tuple(sorted(masks, key=lambda m: (m.bit_count(), m)))
        self._rank = _validate(vertex_count, self._masks)

    # -- basic views -------------------------------------------------------

    @cached_property
    def faces(self) -> frozenset[frozenset[int]]:
        return frozenset(mask_to_set(m) for m in self._masks)

    @property
    def face_masks(self) -> tuple[int, ...]:
        """All faces as bitmasks, ordered by size."""
        return self._masks

    @cached_property
    def rank_of_face(self) -> dict[frozenset[int], int]:
        return {mask_to_set(m): r for m, r in self._rank.items()}

    def rank_of_mask(self, m: int) -> int:
        return self._rank[m]

    def has_face(self, face: Iterable[int]) -> bool:
        return set_to_mask(face) in self._rank

    @property
    def top_mask(self) -> int:
        return (1 << self.vertex_count) - 1

    @property
    def dimension(self) -> int:
        return self._rank[self.top_mask] - 1

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dimension + 1)
        for m, r in self._rank.items():
            if r:
                counts[r - 1] += 1
        return tuple(counts)

    def masks_of_rank(self, r: int) -> list[int]:
        return [m for m in self._masks if self._rank[m] == r]

    def faces_of_dimension(self, k: int) -> list[frozenset[int]]:
        return [mask_to_set(m) for m in self.masks_of_rank(k + 1)]

    @cached_property
    def facets(self) -> list[frozenset[int]]:
        return self.faces_of_dimension(self.dimension - 1)

    @cached_property
    def graph(self) -> Graph:
        edges = [tuple(mask_iter(m)) for m in self.masks_of_rank(2)]
        return Graph(self.vertex_count, frozenset(edges))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FaceLattice):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self._masks == other._masks

    def __hash__(self) -> int:
        return hash((self.vertex_count, self._masks))

    def __repr__(self) -> str:
        return f"FaceLattice(vertices={self.vertex_count}, f_vector={self.f_vector})"


def _validate(n: int, masks: Sequence[int]) -> dict[int, int]:
    present = set(masks)
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if a & b not in present:
                raise NotPolytopalError(
                    f"not intersection-closed: {sorted(mask_iter(a))} & {sorted(mask_iter(b))}"
                )
    # masks are sorted by size, so every proper subface comes first
    rank: dict[int, int] = {}
    below: dict[int, list[int]] = {}
    for i, f in enumerate(masks):
        subs = [g for g in masks[:i] if g & f == g and g != f]
        below[f] = subs
        rank[f] = 1 + max((rank[g] for g in subs), default=-1)
    for f in masks:
        subs = below[f]
        for g in subs:
            if any(h != g and h & g == g for h in subs):
                continue
            if rank[g] != rank[f] - 1:
                raise NotPolytopalError(
                    f"not graded: {sorted(mask_iter(g))} is covered by "
                    f"{sorted(mask_iter(f))} but ranks are {rank[g]} and {rank[f]}"
                )
    atoms = {m for m in masks if rank[m] == 1}
    if atoms != {1 << v for v in range(n)}:
        raise NotPolytopalError("the atoms are not exactly the single vertices")
    adj = [0] * n
    for m in masks:
        if rank[m] == 2:
            if m.bit_count() != 2:
                raise NotPolytopalError(f"rank-2 face {sorted(mask_iter(m))} is not an edge")
            a, b = mask_iter(m)
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    for m in masks:
        if rank[m] == 3:
            if m.bit_count() < 3 or any((adj[v] & m).bit_count() != 2 for v in mask_iter(m)) \
                    or not is_connected_mask(adj, m):
                raise NotPolytopalError(f"2-face {sorted(mask_iter(m))} is not a polygon")
    return rank


def lattice_from_facets(vertex_count: int, facets: Iterable[Iterable[int]]) -> FaceLattice:
    """Close ``facets`` and the full vertex set under intersection and validate."""
    fs = [frozenset(f) for f in facets]
    if not fs:
        raise NotPolytopalError("no facets given")
    for f in fs:
        if any(not (0 <= v < vertex_count) for v in f):
            raise NotPolytopalError(f"facet {sorted(f)} has ids outside [0, {vertex_count})")
    for i, a in enumerate(fs):
        for j, b in enumerate(fs):
            if i != j and a <= b:
                raise NotPolytopalError(f"facet {sorted(a)} is contained in facet {sorted(b)}")
    closed = {set_to_mask(range(vertex_count))}
    for f in fs:
        m = set_to_mask(f)
        closed |= {m & g for g in closed}
        closed.add(m)
    lat = FaceLattice(vertex_count, (mask_to_set(m) for m in closed))
    got = {frozenset(f) for f in lat.facets}
    if got != set(fs):
        raise NotPolytopalError("the given facets are not the maximal proper faces of their closure")
    return lat


# -- structural queries ------------------------------------------------------


def dimension(L: FaceLattice) -> int:
    return L.dimension


def f_vector(L: FaceLattice) -> tuple[int, ...]:
    """``(f_0, ..., f_d)``, including ``f_d = 1``."""
    return L.f_vector


def total_faces(L: FaceLattice) -> int:
    """Number of non-empty faces, the sum of the f-vector."""
    return sum(L.f_vector)


def graph_of(L: FaceLattice) -> Graph:
    return L.graph


def is_simple_at(L: FaceLattice, v: int) -> bool:
    if not 0 <= v < L.vertex_count:
        raise InputError(f"{v} is not a vertex")
    return L.graph.degree(v) == L.dimension


def non_simple_vertices(L: FaceLattice) -> list[int]:
    d = L.dimension
    return [v for v, k in enumerate(L.graph.degrees()) if k != d]


def nearly_simple_index(L: FaceLattice) -> int:
    return len(non_simple_vertices(L))


def faces_containing(L: FaceLattice, v: int) -> list[frozenset[int]]:
    """All non-empty faces containing vertex ``v``."""
    bit = 1 << v
    return [mask_to_set(m) for m in L.face_masks if m & bit]


def two_faces_containing(L: FaceLattice, v: int) -> list[frozenset[int]]:
    bit = 1 << v
    return [mask_to_set(m) for m in L.masks_of_rank(3) if m & bit]


def relabel_lattice(L: FaceLattice, perm: Sequence[int]) -> FaceLattice:
    return FaceLattice(L.vertex_count, ({perm[v] for v in f} for f in L.faces))


def lattice_isomorphic(L1: FaceLattice, L2: FaceLattice) -> bool:
    """Whether some vertex bijection carries the faces of ``L1`` onto those of ``L2``.

    Compares canonical forms of the two-coloured vertex-facet incidence graphs.
    """
    if L1.vertex_count != L2.vertex_count or L1.f_vector != L2.f_vector:
        return False
    return _incidence_certificate(L1) == _incidence_certificate(L2)


def _incidence_certificate(L: FaceLattice) -> bytes:
    n = L.vertex_count
    facets = L.facets
    edges = [(v, n + i) for i, f in enumerate(facets) for v in f]
    g = Graph(n + len(facets), frozenset(edges))
    return canonical_form(g, [0] * n + [1] * len(facets))


# -- truncation --------------------------------------------------------------


@dataclass(frozen=True)
class TruncationRecord:
    """How the vertices of a truncated polytope relate to the original.

    Surviving original vertices are renumbered ``0 .. len(kept) - 1`` in
    increasing order (``kept[i]`` is the original id); the new vertices
    follow, one per cut edge, in lexicographic ``(cut-face endpoint,
    outside endpoint)`` order (``crossing[j]`` is that pair for new id
    ``len(kept) + j``).
    """

    truncated_face: frozenset[int]
    original_vertex_count: int
    kept: tuple[int, ...]
    crossing: tuple[tuple[int, int], ...]

    @property
    def new_facet_vertices(self) -> frozenset[int]:
        m = len(self.kept)
        return frozenset(range(m, m + len(self.crossing)))

    @property
    def crossing_map(self) -> dict[int, tuple[int, int]]:
        m = len(self.kept)
        return {m + j: e for j, e in enumerate(self.crossing)}

    @property
    def vertex_count(self) -> int:
        return len(self.kept) + len(self.crossing)

    def new_id(self, t: int, w: int) -> int:
        return len(self.kept) + self.crossing.index((t, w))


def make_record(vertex_count: int, cut: Iterable[int], edges: Iterable[tuple[int, int]]) -> TruncationRecord:
    """Record for cutting off the vertex set ``cut``, given the original edges."""
    T = frozenset(cut)
    kept = tuple(v for v in range(vertex_count) if v not in T)
    crossing = []
    for a, b in edges:
        if a in T and b not in T:
            crossing.append((a, b))
        elif b in T and a not in T:
            crossing.append((b, a))
    return TruncationRecord(T, vertex_count, kept, tuple(sorted(crossing)))


def truncate(L: FaceLattice, T: Iterable[int]) -> tuple[FaceLattice, TruncationRecord]:
    """Cut off the face ``T``: the lattice of the truncated polytope and its record."""
    T = frozenset(T)
    tm = set_to_mask(T)
    if tm not in L._rank or tm == 0 or tm == L.top_mask:
        raise InputError(f"{sorted(T)} is not a proper non-empty face")
    rec = make_record(L.vertex_count, T, L.graph.edges)
    new_of = {v: i for i, v in enumerate(rec.kept)}
    cut_edges = [(t, w, len(rec.kept) + j) for j, (t, w) in enumerate(rec.crossing)]
    faces = []
    for m in L.face_masks:
        if m & tm == 0:
            faces.append({new_of[v] for v in mask_iter(m)})
            continue
        if m & ~tm == 0:
            continue
        spawned = {nid for t, w, nid in cut_edges if m >> t & 1 and m >> w & 1}
        faces.append({new_of[v] for v in mask_iter(m & ~tm)} | spawned)
        faces.append(spawned)
    try:
        Lp = FaceLattice(rec.vertex_count, faces)
    except NotPolytopalError as exc:
        raise SurgeryError(f"truncation at {sorted(T)} is not a lattice: {exc}") from None
    return Lp, rec


def untruncate(
    Lp: FaceLattice,
    rec: TruncationRecord,
    restored: Iterable[Iterable[int]] | None = None,
) -> FaceLattice:
    """Collapse the new facet of ``Lp`` back onto the cut face.

    ``restored`` is the non-empty face family of the cut face in original
    ids; it defaults to ``{x}`` for a vertex cut and ``{x}, {y}, {x, y}``
    for an edge cut.
    """
    T = rec.truncated_face
    if restored is None:
        if len(T) == 1:
            restored = [T]
        elif len(T) == 2:
            restored = [T] + [{v} for v in T]
        else:
            raise InputError("restored faces must be given for cut faces with more than two vertices")
    if Lp.vertex_count != rec.vertex_count:
        raise InputError("truncation record does not match the lattice size")
    fm = set_to_mask(rec.new_facet_vertices)
    if fm not in Lp._rank or Lp._rank[fm] != Lp.dimension:
        raise InputError("no facet of the lattice matches the truncation record")
    back = list(rec.kept) + [t for t, _ in rec.crossing]
    faces = [set(f) for f in restored]
    for m in Lp.face_masks:
        if m & ~fm == 0:
            continue
        faces.append({back[v] for v in mask_iter(m)})
    try:
        return FaceLattice(rec.original_vertex_count, faces)
    except NotPolytopalError as exc:
        raise SurgeryError(f"untruncation is not a lattice: {exc}") from None


# -- file formats -------------------------------------------------------------


def sorted_facets(facets: Iterable[Iterable[int]]) -> list[list[int]]:
    """Each facet descending, facets in reverse lexicographic order."""
    return sorted((sorted(f, reverse=True) for f in facets), reverse=True)


def lattice_to_json(L: FaceLattice) -> str:
    payload = {"vertices": L.vertex_count, "facets": sorted_facets(L.facets)}
    return json.dumps(payload, separators=(", ", ": ")) + "\n"


def lattice_from_json(text: str) -> FaceLattice:
    try:
        data = json.loads(text)
        n = data["vertices"]
        facets = [list(f) for f in data["facets"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed lattice file: {exc}") from None
    return lattice_from_facets(n, facets)


def record_to_json(rec: TruncationRecord) -> str:
    payload = {
        "truncated_face": sorted(rec.truncated_face),
        "original_vertices": rec.original_vertex_count,
        "kept": list(rec.kept),
        "crossing": [list(e) for e in rec.crossing],
    }
    return json.dumps(payload, separators=(", ", ": ")) + "\n"


def record_from_json(text: str) -> TruncationRecord:
    try:
        data = json.loads(text)
        return TruncationRecord(
            frozenset(data["truncated_face"]),
            int(data["original_vertices"]),
            tuple(data["kept"]),
            tuple(tuple(e) for e in data["crossing"]),
        )
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed truncation record: {exc}") from None


def restored_family(L: FaceLattice, T: Iterable[int]) -> list[frozenset[int]]:
    """Non-empty faces of ``L`` inside ``T``; what :func:`untruncate` needs back."""
    tm = set_to_mask(T)
    return [mask_to_set(m) for m in L.face_masks if m and m & ~tm == 0]
