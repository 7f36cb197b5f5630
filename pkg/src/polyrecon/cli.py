"""Command-line front end.

Every subcommand prints one JSON payload (or a text rendering with
``--format text``) on stdout and diagnostics on stderr.  Exit codes:

====  =========================================================
0     success (``verify-example``: the pair is a counterexample)
1     ``verify-example`` only: the pair is not a counterexample
2     usage or input error
3     capacity exceeded
4     unsupported class (three or more non-simple vertices)
5     reconstruction or surgery failure
====  =========================================================
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import census, face_lattice as fl, fixtures, orientations as ori, reconstruct as rc
from .errors import (
    CapacityError,
    InputError,
    PolyreconError,
    ReconstructionFailed,
    SurgeryError,
    UnsupportedClassError,
)
from .graphs import graph_from_json, graph_to_json

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_CAPACITY = 3
EXIT_UNSUPPORTED = 4
EXIT_FAILED = 5


@dataclass
class CommandResult:
    exit_code: int
    payload: dict | str
    diagnostics: list[str] = field(default_factory=list)

    def render(self) -> str:
        if isinstance(self.payload, str):
            return self.payload
        return json.dumps(self.payload, sort_keys=True, indent=2) + "\n"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


def _load_catalog(source: str):
    if source == "fixtures":
        return list(fixtures.catalog_entries())
    return census.parse_catalog(_read(source))


def _parse_face(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"cannot parse face {text!r}") from None


def _lattice_summary(L: fl.FaceLattice) -> dict:
    return {
        "vertices": L.vertex_count,
        "dimension": L.dimension,
        "f_vector": list(L.f_vector),
        "facets": fl.sorted_facets(L.facets),
    }


def _cmd_reconstruct(args) -> CommandResult:
    g = graph_from_json(_read(args.graph))
    r = rc.reconstruct_report(g, args.dim)
    _write(args.out, fl.lattice_to_json(r.lattice))
    payload = {
        "method": r.method,
        "dimension": r.dimension,
        "dimension_assumed": r.dimension_assumed,
        "h": r.h,
        "lattice": _lattice_summary(r.lattice),
    }
    if args.format == "text":
        lines = [f"method: {r.method}", f"dimension: {r.dimension}", f"f-vector: {list(r.lattice.f_vector)}"]
        lines += [" ".join(map(str, f)) for f in payload["lattice"]["facets"]]
        return CommandResult(EXIT_OK, "\n".join(lines) + "\n", list(r.notes))
    return CommandResult(EXIT_OK, payload, list(r.notes))


def _cmd_fo_min(args) -> CommandResult:
    g = graph_from_json(_read(args.graph))
    if args.sink is None:
        value, witnesses = ori.min_f_O(g)
    else:
        value, witnesses = ori.min_f_O_with_sink(g, args.sink)
    _write(args.out, ori.orientation_to_json(witnesses[0]))
    payload = {"minimum": value, "witnesses": len(witnesses), "sink": args.sink}
    if args.format == "text":
        return CommandResult(EXIT_OK, f"minimum {value}\nwitnesses {len(witnesses)}\n")
    return CommandResult(EXIT_OK, payload)


def _cmd_truncate(args) -> CommandResult:
    L = fl.lattice_from_json(_read(args.lattice))
    Lp, rec = fl.truncate(L, _parse_face(args.face))
    _write(args.out, fl.lattice_to_json(Lp))
    _write(args.record_out, fl.record_to_json(rec))
    payload = {
        "lattice": _lattice_summary(Lp),
        "new_facet": sorted(rec.new_facet_vertices),
        "crossing": {str(k): list(v) for k, v in rec.crossing_map.items()},
    }
    return CommandResult(EXIT_OK, payload)


def _cmd_untruncate(args) -> CommandResult:
    Lp = fl.lattice_from_json(_read(args.lattice))
    rec = fl.record_from_json(_read(args.record))
    restored = None
    if args.restored:
        restored = [_parse_face(f) for f in args.restored.split("|")]
    L = fl.untruncate(Lp, rec, restored)
    _write(args.out, fl.lattice_to_json(L))
    return CommandResult(EXIT_OK, {"lattice": _lattice_summary(L)})


def _cmd_census(args) -> CommandResult:
    report = census.census_report(_load_catalog(args.catalog), args.dim)
    _write(args.out, json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n")
    if args.format == "text":
        return CommandResult(EXIT_OK, report.to_text())
    return CommandResult(EXIT_OK, report.to_dict())


def _cmd_verify(args) -> CommandResult:
    entries = {e.id: e for e in _load_catalog(args.catalog)}
    for key in (args.a, args.b):
        if key not in entries:
            raise InputError(f"no entry {key!r} in catalog")
    a, b = entries[args.a], entries[args.b]
    same_graph = a.graph_certificate == b.graph_certificate
    verdict = census.verify_counterexample(a, b)
    payload = {
        "a": args.a,
        "b": args.b,
        "isomorphic_graphs": same_graph,
        "isomorphic_lattices": fl.lattice_isomorphic(a.lattice, b.lattice),
        "counterexample": verdict,
    }
    return CommandResult(EXIT_OK if verdict else EXIT_FALSE, payload)


def _cmd_fixtures(args) -> CommandResult:
    entries = list(fixtures.catalog_entries())
    if args.id is not None:
        entries = [e for e in entries if e.id == args.id]
        if not entries:
            raise InputError(f"no bundled fixture {args.id!r}")
    if args.emit == "graph":
        if len(entries) != 1:
            raise InputError("--emit graph needs --id")
        return CommandResult(EXIT_OK, graph_to_json(entries[0].lattice.graph))
    if args.emit == "lattice":
        if len(entries) != 1:
            raise InputError("--emit lattice needs --id")
        return CommandResult(EXIT_OK, fl.lattice_to_json(entries[0].lattice))
    if args.format == "text":
        return CommandResult(EXIT_OK, census.catalog_to_text(entries))
    payload = {
        "fixtures": [
            {"id": e.id, "dimension": e.dimension, "facets": [list(f) for f in e.facets]}
            for e in entries
        ]
    }
    return CommandResult(EXIT_OK, payload)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="polyrecon", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp):
        sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("reconstruct", help="face lattice from a graph file")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--dim", type=int)
    sp.add_argument("--out")
    fmt(sp)
    sp.set_defaults(func=_cmd_reconstruct)

    sp = sub.add_parser("fo-min", help="minimum of f^O and witness count")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--sink", type=int)
    sp.add_argument("--out", help="write the first witness orientation here")
    fmt(sp)
    sp.set_defaults(func=_cmd_fo_min)

    sp = sub.add_parser("truncate", help="cut a face off a lattice")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--face", required=True, help="vertex ids, space or comma separated")
    sp.add_argument("--out")
    sp.add_argument("--record-out")
    sp.set_defaults(func=_cmd_truncate)

    sp = sub.add_parser("untruncate", help="undo a truncation")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--record", required=True)
    sp.add_argument("--restored", help="faces of the cut face, e.g. '0|1|0 1'")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_untruncate)

    sp = sub.add_parser("census", help="group a catalog by graph isomorphism")
    sp.add_argument("--catalog", required=True, help="catalog file, or 'fixtures'")
    sp.add_argument("--dim", type=int)
    sp.add_argument("--out", help="also write the JSON report here")
    fmt(sp)
    sp.set_defaults(func=_cmd_census)

    sp = sub.add_parser("verify-example", help="isomorphic graphs, distinct lattices?")
    sp.add_argument("--catalog", required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("fixtures", help="dump the bundled catalog polytopes")
    sp.add_argument("--id")
    sp.add_argument("--emit", choices=("facets", "graph", "lattice"), default="facets")
    fmt(sp)
    sp.set_defaults(func=_cmd_fixtures)
    return p


def run(argv: list[str]) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return CommandResult(EXIT_INPUT, {"error": "usage", "message": str(exc)}, [parser.format_usage().strip(), str(exc)])
    except SystemExit as exc:  # --help
        return CommandResult(exc.code or EXIT_OK, "")
    try:
        return args.func(args)
    except UnsupportedClassError as exc:
        return CommandResult(EXIT_UNSUPPORTED, {"error": "unsupported", "h": exc.h, "message": str(exc)}, [str(exc)])
    except CapacityError as exc:
        return CommandResult(EXIT_CAPACITY, {"error": "capacity", "message": str(exc)}, [str(exc)])
    except (ReconstructionFailed, SurgeryError) as exc:
        payload = {"error": "failed", "message": str(exc)}
        if isinstance(exc, ReconstructionFailed):
            payload["stage"] = exc.stage
            payload["face"] = None if exc.face is None else list(exc.face)
        return CommandResult(EXIT_FAILED, payload, [str(exc)])
    except (InputError, PolyreconError) as exc:
        return CommandResult(EXIT_INPUT, {"error": "input", "message": str(exc)}, [str(exc)])


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    result = run(argv)
    sys.stdout.write(result.render())
    for line in result.diagnostics:
        print(line, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
