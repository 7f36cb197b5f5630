"""Face lattices from graphs for simple, 1-nearly simple and 2-nearly simple polytopes.

* Simple: the faces are the k-regular connected induced subgraphs that are
  initial for some acyclic orientation minimising ``f^O``.
* 1-nearly simple: the 2-faces through the non-simple vertex ``x`` are the
  minimiser-initial 2-rics containing ``x``; they give the graph of the
  polytope truncated at ``x``, which is simple, and the cut is undone.
* 2-nearly simple: 2-faces through exactly one of the non-simple vertices
  come from orientations with the other one forced to be a sink.  If the
  two vertices are not adjacent, cut at the smaller one, fill the single
  missing edge of the new facet and recurse on the 1-nearly simple result;
  if they are adjacent, also collect the 2-faces through both and cut the
  edge between them.

Minimiser classes are handled through :class:`MinimizerProfile`, i.e. the
union over every minimising orientation, never a single witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import InputError, NotPolytopalError, NotSimpleGraphError, ReconstructionFailed, SurgeryError, UnsupportedClassError
from .face_lattice import FaceLattice, TruncationRecord, make_record, untruncate
from .graphs import Graph, induced_subgraph, regular_degree
from .orientations import MinimizerProfile


def infer_dimension(g: Graph, claimed: int | None = None) -> int:
    """``claimed`` if given, else the minimum degree."""
    if not g.is_connected():
        raise InputError("graph is not connected")
    mindeg = min(g.degrees())
    if claimed is None:
        return mindeg
    if claimed < 0 or claimed > mindeg:
        raise InputError(f"claimed dimension {claimed} exceeds the minimum degree {mindeg}")
    return claimed


def reconstruct_simple(g: Graph, d: int) -> FaceLattice:
    if g.vertex_count == 1 and d == 0:
        return FaceLattice(1, [])
    if regular_degree(g.masks, g.full_mask) != d:
        raise InputError(f"graph is not {d}-regular and connected")
    profile = MinimizerProfile(g)
    faces = [s for s, k in profile.initial_krics() if k < d]
    try:
        L = FaceLattice(g.vertex_count, faces)
    except NotPolytopalError as exc:
        raise NotSimpleGraphError("simple", f"not a simple polytope graph: {exc}") from None
    if L.dimension != d:
        raise NotSimpleGraphError("simple", f"assembled lattice has dimension {L.dimension}, expected {d}")
    return L


def two_face_candidates(
    g: Graph,
    anchors: Iterable[int],
    sink: int | None = None,
    forbidden: Iterable[int] = (),
) -> list[frozenset[int]]:
    """Initial 2-rics, over every orientation of the minimising class, through all ``anchors``.

    ``sink=None`` selects the global minimisers of ``f^O``; otherwise the
    minimisers among orientations in which ``sink`` is a sink.  Sets meeting
    ``forbidden`` are dropped.
    """
    anchors = frozenset(anchors)
    forbidden = frozenset(forbidden)
    if not anchors:
        raise InputError("anchors must be non-empty")
    profile = MinimizerProfile(g, sink)
    return [
        s for s, _ in profile.initial_krics(2)
        if anchors <= s and not (s & forbidden)
    ]


def _cut_graph(g: Graph, cut: Iterable[int], joins: list[tuple[int, int, int, int]]) -> tuple[Graph, TruncationRecord]:
    # joins: pairs of crossing edges (t1, w1), (t2, w2) whose new vertices are adjacent
    rec = make_record(g.vertex_count, cut, g.edges)
    new_of = {v: i for i, v in enumerate(rec.kept)}
    edges = set()
    for a, b in g.edges:
        if a in new_of and b in new_of:
            edges.add((new_of[a], new_of[b]))
    for j, (t, w) in enumerate(rec.crossing):
        edges.add((len(rec.kept) + j, new_of[w]))
    for t1, w1, t2, w2 in joins:
        edges.add((rec.new_id(t1, w1), rec.new_id(t2, w2)))
    return Graph(rec.vertex_count, frozenset(edges)), rec


def _face_edges_at(g: Graph, face: frozenset[int], x: int, stage: str) -> list[int]:
    nb = sorted(w for w in face if g.has_edge(x, w))
    if len(nb) != 2:
        raise InputError(f"{stage}: 2-face {sorted(face)} has {len(nb)} edges at {x}, expected 2")
    return nb


def truncated_graph_at_vertex(g: Graph, x: int, two_faces_at_x) -> tuple[Graph, TruncationRecord]:
    """Graph of the polytope cut at vertex ``x``, given the 2-faces through ``x``."""
    joins = []
    for f in two_faces_at_x:
        f = frozenset(f)
        if x not in f:
            raise InputError(f"2-face {sorted(f)} does not contain {x}")
        a, b = _face_edges_at(g, f, x, "vertex truncation")
        joins.append((x, a, x, b))
    return _cut_graph(g, [x], joins)


def truncated_graph_at_edge(g: Graph, x: int, y: int, two_faces) -> tuple[Graph, TruncationRecord]:
    """Graph of the polytope cut at the edge ``xy``, given the 2-faces meeting it."""
    if not g.has_edge(x, y):
        raise InputError(f"{x} and {y} are not adjacent")
    joins = []
    for f in two_faces:
        f = frozenset(f)
        ends = [(t, [w for w in _face_edges_at(g, f, t, "edge truncation") if w not in (x, y)])
                for t in (x, y) if t in f]
        crossing = [(t, w) for t, ws in ends for w in ws]
        if len(crossing) != 2:
            raise InputError(
                f"edge truncation: 2-face {sorted(f)} crosses the cut in {len(crossing)} edges, expected 2"
            )
        (t1, w1), (t2, w2) = crossing
        joins.append((t1, w1, t2, w2))
    return _cut_graph(g, [x, y], joins)


def complete_new_facet(gF: Graph, d: int) -> Graph:
    """Add the one edge a (d-1)-regular facet graph can be missing."""
    degs = gF.degrees()
    short = [v for v, k in enumerate(degs) if k == d - 2]
    if any(k not in (d - 1, d - 2) for k in degs) or len(short) not in (0, 2):
        raise ReconstructionFailed(
            "facet completion",
            f"facet completion impossible: degree profile {sorted(degs)} for d={d}",
        )
    if not short:
        return gF
    a, b = short
    if gF.has_edge(a, b):
        raise ReconstructionFailed("facet completion", "the two deficient vertices are already adjacent")
    return Graph(gF.vertex_count, gF.edges | {(a, b)})


def _check_result(L: FaceLattice, g: Graph, stage: str) -> FaceLattice:
    if L.graph != g:
        raise ReconstructionFailed(stage, "reconstructed lattice does not reproduce the input graph")
    return L


def _undo(Lp: FaceLattice, rec: TruncationRecord, stage: str) -> FaceLattice:
    try:
        return untruncate(Lp, rec)
    except (SurgeryError, InputError) as exc:
        raise ReconstructionFailed(stage, str(exc), rec.truncated_face) from None


def _non_simple(g: Graph, d: int) -> list[int]:
    degs = g.degrees()
    if min(degs) < d:
        raise InputError(f"a vertex has degree below the dimension {d}")
    return [v for v, k in enumerate(degs) if k > d]


def reconstruct_1_nearly_simple(g: Graph, d: int) -> FaceLattice:
    ns = _non_simple(g, d)
    if len(ns) != 1:
        raise InputError(f"expected exactly one non-simple vertex, found {len(ns)}")
    x = ns[0]
    faces = two_face_candidates(g, [x])
    gp, rec = truncated_graph_at_vertex(g, x, faces)
    if regular_degree(gp.masks, gp.full_mask) != d:
        raise ReconstructionFailed("1-nearly simple", f"graph cut at {x} is not {d}-regular", [x])
    try:
        Lp = reconstruct_simple(gp, d)
    except ReconstructionFailed as exc:
        raise ReconstructionFailed("1-nearly simple", f"truncated polytope: {exc}", [x]) from None
    return _check_result(_undo(Lp, rec, "1-nearly simple"), g, "1-nearly simple")


def reconstruct_2_nearly_simple(g: Graph, d: int) -> FaceLattice:
    ns = _non_simple(g, d)
    if len(ns) != 2:
        raise InputError(f"expected exactly two non-simple vertices, found {len(ns)}")
    x, y = ns
    only_x = two_face_candidates(g, [x], sink=y, forbidden=[y])
    only_y = two_face_candidates(g, [y], sink=x, forbidden=[x])
    stage = "2-nearly simple"
    if not g.has_edge(x, y):
        gp, rec = truncated_graph_at_vertex(g, x, only_x)
        new = sorted(rec.new_facet_vertices)
        gF, ids = induced_subgraph(gp, new)
        full = complete_new_facet(gF, d)
        extra = {(ids[a], ids[b]) for a, b in full.edges - gF.edges}
        gp = Graph(gp.vertex_count, gp.edges | extra)
        try:
            Lp = reconstruct_1_nearly_simple(gp, d)
        except ReconstructionFailed as exc:
            raise ReconstructionFailed(stage, f"truncated polytope: {exc}", [x]) from None
        except InputError as exc:
            raise ReconstructionFailed(stage, f"graph cut at {x}: {exc}", [x]) from None
        return _check_result(_undo(Lp, rec, stage), g, stage)
    both = two_face_candidates(g, [x, y])
    gp, rec = truncated_graph_at_edge(g, x, y, only_x + only_y + both)
    if regular_degree(gp.masks, gp.full_mask) != d:
        raise ReconstructionFailed(stage, f"graph cut at edge {x}{y} is not {d}-regular", [x, y])
    try:
        Lp = reconstruct_simple(gp, d)
    except ReconstructionFailed as exc:
        raise ReconstructionFailed(stage, f"truncated polytope: {exc}", [x, y]) from None
    return _check_result(_undo(Lp, rec, stage), g, stage)


@dataclass(frozen=True)
class Reconstruction:
    lattice: FaceLattice
    dimension: int
    dimension_assumed: bool
    h: int
    method: str
    notes: tuple[str, ...] = field(default=())


def reconstruct_report(g: Graph, claimed_dimension: int | None = None) -> Reconstruction:
    """Dispatch on the number of non-simple vertices; refuses h >= 3."""
    d = infer_dimension(g, claimed_dimension)
    h = sum(1 for k in g.degrees() if k > d)
    notes = ()
    if claimed_dimension is None:
        notes = (f"dimension assumed = min degree = {d}",)
    if h == 0:
        L, method = reconstruct_simple(g, d), "simple"
    elif h == 1:
        L, method = reconstruct_1_nearly_simple(g, d), "1-nearly simple"
    elif h == 2:
        L, method = reconstruct_2_nearly_simple(g, d), "2-nearly simple"
    else:
        raise UnsupportedClassError(h)
    return Reconstruction(L, d, claimed_dimension is None, h, method, notes)


def reconstruct(g: Graph, claimed_dimension: int | None = None) -> FaceLattice:
    return reconstruct_report(g, claimed_dimension).lattice
