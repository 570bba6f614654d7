"""Command-line interface: ``hbinv <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import census as census_mod
from .canonical import CanonicalForm, boundary_collisions, build_free, build_nonfree, enumerate_classes
from .classify import classify
from .invariants import boundary_data, invariant_record, pole_complex, quotient
from .model import Model, SpineError, equivariant_isomorphic
from .moves import normalize, split
from .textfmt import parse_model, serialize_model

EXIT_OK, EXIT_INVALID, EXIT_VERIFY_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(path: str) -> Model:
    if path == "-":
        return parse_model(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


def _dump(obj, sort_keys: bool = True) -> str:
    return json.dumps(obj, sort_keys=sort_keys, separators=(", ", ": "))


def _class_record(c: CanonicalForm) -> dict:
    return {
        "display": c.display,
        "g": c.genus,
        "n": c.n,
        "m": None if c.is_free else c.m,
        "l": None if c.is_free else c.l,
        "free": c.is_free,
    }


def _class_line(c: CanonicalForm) -> str:
    if c.is_free:
        return f"{c.display} g={c.genus} n={c.n} free"
    return f"{c.display} g={c.genus} n={c.n} m={c.m} l={c.l}"


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def emit_dot(m: Model) -> str:
    """Quotient graph and fixed-set components as two undirected DOT graphs."""
    q = quotient(m).quotient_graph
    out = ["graph quotient {"]
    for v in q.vertices:
        label = f"{v} (branch end)" if v in q.mirrors else v
        out.append(f"  {_quote(v)} [label={_quote(label)}];")
    for label, a, b in q.edges:
        out.append(f"  {_quote(a)} -- {_quote(b)} [label={_quote(label)}];")
    out.append("}")
    pc = pole_complex(m)
    out.append("graph fixed_set {")
    for v, slot in pc.poles:
        out.append(f"  {_quote(f'{v}:{slot}')} [label={_quote(f'{v} pole {slot}')}];")
    for e in pc.inverted_edges:
        for end in (0, 1):
            out.append(f"  {_quote(f'{e}:{end}')} [label={_quote(f'{e} boundary point {end}')}];")
    for (va, sa), (vb, sb), label in pc.segments:
        kind = "ball axis" if label in m.vertex_map else "handle core"
        out.append(
            f"  {_quote(f'{va}:{sa}')} -- {_quote(f'{vb}:{sb}')} [label={_quote(f'{kind} {label}')}];"
        )
    for e in pc.inverted_edges:
        out.append(f"  {_quote(f'{e}:0')} -- {_quote(f'{e}:1')} [label={_quote(f'co-core {e}')}];")
    out.append("}")
    return "\n".join(out) + "\n"


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hbinv", description="Involutions of handlebodies as equivariant graph spines.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def cmd(name, help_, file_arg=True):
        sp = sub.add_parser(name, help=help_)
        if file_arg:
            sp.add_argument("file", help="model file ('-' for stdin)")
        sp.add_argument("--json", action="store_true", help="emit JSON")
        return sp

    cmd("classify", "canonical class of a model")
    b = cmd("build", "write a canonical model", file_arg=False)
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--free", type=int, metavar="N")
    g.add_argument("--nonfree", type=int, nargs=3, metavar=("N", "M", "L"))
    b.add_argument("-o", "--output")
    cmd("invariants", "genus, fixed set, quotient and boundary data")
    cmd("quotient", "quotient graph and genus")
    cmd("boundary", "boundary fixed points and quotient genus")
    nm = cmd("normalize", "contract legal orbits and print the trace")
    nm.add_argument("-o", "--output", help="write the normalized model here")
    iso = sub.add_parser("isomorphic", help="equivariant isomorphism test")
    iso.add_argument("file1")
    iso.add_argument("file2")
    iso.add_argument("--json", action="store_true")
    iso.add_argument("--budget", type=int, default=1_000_000)
    sp = cmd("split", "delete an edge orbit and report components")
    sp.add_argument("--orbit", required=True, metavar="EDGE")
    c = cmd("census", "spine counts per invariant tuple", file_arg=False)
    c.add_argument("--genus", type=int, required=True)
    c.add_argument("--max-edges", type=int, required=True)
    c.add_argument("--jobs", type=int, default=1)
    v = cmd("verify", "exhaustive check of the classification", file_arg=False)
    v.add_argument("--max-genus", type=int, required=True)
    v.add_argument("--max-edges", type=int, required=True)
    v.add_argument("--jobs", type=int, default=1)
    cl = cmd("classes", "equivalence classes of a genus", file_arg=False)
    cl.add_argument("--genus", type=int, required=True)
    co = cmd("collisions", "classes with equivalent boundary restrictions", file_arg=False)
    co.add_argument("--genus", type=int, required=True)
    sub.add_parser("emit-dot", help="DOT text for quotient graph and fixed set").add_argument("file")
    return p


def _run(args, out) -> int:
    if args.cmd == "classify":
        c = classify(_load(args.file))
        out.write((_dump(_class_record(c), sort_keys=False) if args.json else _class_line(c)) + "\n")
    elif args.cmd == "build":
        if args.free is not None:
            m = build_free(args.free)
        else:
            m = build_nonfree(*args.nonfree)
        text = serialize_model(m)
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            out.write(text)
    elif args.cmd == "invariants":
        rec = invariant_record(_load(args.file))
        if args.json:
            out.write(_dump(rec, sort_keys=False) + "\n")
        else:
            for k, val in rec.items():
                out.write(f"{k} {str(val).lower() if isinstance(val, bool) else val}\n")
    elif args.cmd == "quotient":
        q = quotient(_load(args.file))
        qg = q.quotient_graph
        if args.json:
            out.write(_dump({
                "branch_arcs": q.branch_arcs,
                "branch_circles": q.branch_circles,
                "edges": [list(e) for e in qg.edges],
                "mirrors": list(qg.mirrors),
                "quotient_genus": q.quotient_genus,
                "vertices": list(qg.vertices),
            }) + "\n")
        else:
            out.write(f"quotient_genus {q.quotient_genus}\n")
            out.write(f"branch_arcs {q.branch_arcs}\nbranch_circles {q.branch_circles}\n")
            for v in qg.vertices:
                out.write(f"vertex {v}{' mirror' if v in qg.mirrors else ''}\n")
            for label, a, b2 in qg.edges:
                out.write(f"edge {label} {a} {b2}\n")
    elif args.cmd == "boundary":
        bd = boundary_data(_load(args.file))
        rec = {
            "boundary_fixed_points": bd.boundary_fixed_points,
            "boundary_quotient_genus": bd.boundary_quotient_genus,
        }
        if args.json:
            out.write(_dump(rec) + "\n")
        else:
            for k, val in rec.items():
                out.write(f"{k} {val}\n")
    elif args.cmd == "normalize":
        result, trace = normalize(_load(args.file))
        if args.json:
            out.write(_dump({"trace": trace.lines(), "model": serialize_model(result)}) + "\n")
        else:
            for line in trace.lines():
                out.write(line + "\n")
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(serialize_model(result))
    elif args.cmd == "isomorphic":
        same = equivariant_isomorphic(_load(args.file1), _load(args.file2), budget=args.budget)
        out.write((_dump({"isomorphic": same}) if args.json else str(same).lower()) + "\n")
    elif args.cmd == "split":
        r = split(_load(args.file), args.orbit)
        if args.json:
            out.write(_dump({
                "components": [
                    {"betti": c.betti, "edges": list(c.edges), "preserved": c.preserved, "vertices": list(c.vertices)}
                    for c in r.components
                ],
                "connected_after": r.connected_after,
                "orbit": list(r.orbit),
                "orbit_kind": r.orbit_kind,
            }) + "\n")
        else:
            out.write(f"orbit {'+'.join(r.orbit)} {r.orbit_kind}\n")
            out.write(f"connected_after {str(r.connected_after).lower()}\n")
            for i, c in enumerate(r.components, start=1):
                state = "preserved" if c.preserved else "swapped"
                out.write(f"component {i} betti={c.betti} {state} vertices={','.join(c.vertices)}\n")
    elif args.cmd == "census":
        models = [
            m for m in census_mod.enumerate_models(args.max_edges, args.genus, jobs=args.jobs)
            if len(m.edges) - len(m.vertices) + 1 == args.genus
        ]
        row = census_mod.census_table(models).get(args.genus, {})
        if args.json:
            out.write(_dump({
                "counts": {census_mod.tuple_label(t): c for t, c in row.items()},
                "genus": args.genus,
                "max_edges": args.max_edges,
                "models": len(models),
            }) + "\n")
        else:
            for t, count in row.items():
                out.write(f"{census_mod.tuple_label(t)} {count}\n")
    elif args.cmd == "verify":
        report = census_mod.verify_theorem(args.max_genus, args.max_edges, jobs=args.jobs)
        if args.json:
            out.write(_dump(report.as_record()) + "\n")
        else:
            out.write(report.verdict + "\n")
            out.write(f"models {report.models_checked}\n")
            for g in sorted(report.predicted):
                realized = report.realized.get(g, {})
                for t in sorted(report.predicted[g] | set(realized)):
                    out.write(f"g={g} {census_mod.tuple_label(t)} {realized.get(t, 0)}\n")
            for g in report.under_covered:
                out.write(f"under_covered g={g}\n")
            for c in report.counterexamples:
                out.write("counterexample " + c.replace("\n", " | ") + "\n")
        return EXIT_OK if report.passed else EXIT_VERIFY_FAILED
    elif args.cmd == "classes":
        classes = enumerate_classes(args.genus)
        if args.json:
            out.write(_dump([c.as_record() for c in classes], sort_keys=False) + "\n")
        else:
            for c in classes:
                out.write(c.display + "\n")
    elif args.cmd == "collisions":
        pairs = boundary_collisions(args.genus)
        if args.json:
            out.write(_dump([[a.display, b2.display] for a, b2 in pairs]) + "\n")
        else:
            for a, b2 in pairs:
                out.write(f"{a.display} {b2.display}\n")
    elif args.cmd == "emit-dot":
        out.write(emit_dot(_load(args.file)))
    return EXIT_OK


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(argv)
        return _run(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
    except (SpineError, ValueError, OSError) as exc:
        err.write(f"error: {' | '.join(str(exc).splitlines())}\n")
    return EXIT_INVALID


def main() -> None:
    sys.exit(run())
