"""Catalog ingestion and graph-isomorphism census.

Catalog text is line oriented::

    # comment
    P6; 4; 6 5 4 3 2 1|6 5 4 3 0|6 5 2 1 0|4 3 2 1 0|6 4 2 0|5 3 1 0

A JSON list of ``{"id": ..., "dimension": ..., "facets": [[...], ...]}``
objects is accepted as well.  Vertex labels need not be dense; they are
remapped to ``0 .. n-1`` in increasing order and the map is kept.

Uniqueness in a census is always relative to the catalog supplied: a graph
class with one member says nothing about polytopes missing from the file.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import InputError, NotPolytopalError
from .face_lattice import FaceLattice, lattice_from_facets, lattice_isomorphic
from .graphs import canonical_form

DISCLAIMER = (
    "uniqueness is relative to the supplied catalog only; "
    "polytopes absent from the catalog are not considered"
)


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    dimension: int
    facets: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...]
    lattice: FaceLattice = field(compare=False, repr=False)
    graph_certificate: bytes = field(compare=False, repr=False)


def make_entry(eid: str, dimension: int, facets) -> CatalogEntry:
    """Build and validate one entry; labels are remapped densely."""
    facets = tuple(tuple(f) for f in facets)
    labels = tuple(sorted({v for f in facets for v in f}))
    pos = {v: i for i, v in enumerate(labels)}
    lattice = lattice_from_facets(len(labels), [[pos[v] for v in f] for f in facets])
    if lattice.dimension != dimension:
        raise NotPolytopalError(
            f"entry {eid}: claimed dimension {dimension} but the facets give {lattice.dimension}"
        )
    return CatalogEntry(eid, dimension, facets, labels, lattice, canonical_form(lattice.graph))


def parse_catalog(source: str) -> list[CatalogEntry]:
    stripped = source.lstrip()
    if stripped.startswith("[") or stripped.startswith("{"):
        return _parse_json(stripped)
    entries: list[CatalogEntry] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(";")]
        try:
            if len(parts) != 3 or not parts[0]:
                raise ValueError("expected 'id; dimension; facet|facet|...'")
            eid, dim = parts[0], int(parts[1])
            facets = [[int(t) for t in f.split()] for f in parts[2].split("|")]
            if any(not f for f in facets):
                raise ValueError("empty facet")
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
        if eid in seen:
            raise InputError(f"line {lineno}: duplicate id {eid}")
        seen.add(eid)
        try:
            entries.append(make_entry(eid, dim, facets))
        except NotPolytopalError as exc:
            raise InputError(f"line {lineno}: entry {eid}: {exc}") from None
    return entries


def _parse_json(text: str) -> list[CatalogEntry]:
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise InputError(f"malformed catalog JSON: {exc}") from None
    if isinstance(data, dict):
        data = data.get("entries", [])
    entries: list[CatalogEntry] = []
    seen: set[str] = set()
    for i, item in enumerate(data):
        try:
            eid, dim, facets = str(item["id"]), int(item["dimension"]), item["facets"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"entry {i}: malformed ({exc})") from None
        if eid in seen:
            raise InputError(f"entry {i}: duplicate id {eid}")
        seen.add(eid)
        try:
            entries.append(make_entry(eid, dim, facets))
        except NotPolytopalError as exc:
            raise InputError(f"entry {i}: entry {eid}: {exc}") from None
    return entries


def catalog_to_text(entries) -> str:
    lines = []
    for e in entries:
        facets = "|".join(" ".join(str(v) for v in f) for f in e.facets)
        lines.append(f"{e.id}; {e.dimension}; {facets}")
    return "\n".join(lines) + "\n"


def _natural(s: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", s)]


@dataclass(frozen=True)
class CensusGroup:
    members: tuple[str, ...]
    vertices: int
    edges: int
    certificate: str

    @property
    def unique(self) -> bool:
        return len(self.members) == 1


@dataclass(frozen=True)
class CensusReport:
    restrict_dimension: int | None
    groups: tuple[CensusGroup, ...]
    disclaimer: str = DISCLAIMER

    @property
    def unique_in_catalog(self) -> list[str]:
        return [g.members[0] for g in self.groups if g.unique]

    def group_of(self, eid: str) -> CensusGroup:
        for g in self.groups:
            if eid in g.members:
                return g
        raise KeyError(eid)

    def to_dict(self) -> dict:
        return {
            "restrict_dimension": self.restrict_dimension,
            "disclaimer": self.disclaimer,
            "groups": [
                {
                    "members": list(g.members),
                    "vertices": g.vertices,
                    "edges": g.edges,
                    "unique_in_catalog": g.unique,
                    "certificate": g.certificate,
                }
                for g in self.groups
            ],
        }

    def to_text(self) -> str:
        rows = [f"{'members':<24} {'vertices':>8} {'edges':>6}  status"]
        for g in self.groups:
            status = "unique-in-catalog" if g.unique else "shared graph"
            rows.append(f"{','.join(g.members):<24} {g.vertices:>8} {g.edges:>6}  {status}")
        if self.restrict_dimension is not None:
            rows.append(f"dimension restricted to {self.restrict_dimension}")
        rows.append(f"note: {self.disclaimer}")
        return "\n".join(rows) + "\n"


def census_report(entries, restrict_dimension: int | None = None) -> CensusReport:
    """Group entries by graph isomorphism class."""
    buckets: dict[bytes, list[CatalogEntry]] = {}
    for e in entries:
        if restrict_dimension is not None and e.dimension != restrict_dimension:
            continue
        buckets.setdefault(e.graph_certificate, []).append(e)
    groups = []
    for cert, members in buckets.items():
        g = members[0].lattice.graph
        ids = tuple(sorted((m.id for m in members), key=_natural))
        groups.append(CensusGroup(ids, g.vertex_count, len(g.edges), cert.hex()))
    groups.sort(key=lambda g: _natural(g.members[0]))
    return CensusReport(restrict_dimension, tuple(groups))


def verify_counterexample(a: CatalogEntry, b: CatalogEntry) -> bool:
    """Isomorphic graphs but combinatorially distinct polytopes."""
    return a.graph_certificate == b.graph_certificate and not lattice_isomorphic(a.lattice, b.lattice)
