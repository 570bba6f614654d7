"""Line-oriented text format for spines (``involution-graph v1``)."""
from __future__ import annotations

from typing import Dict, List, Tuple

from .model import (
    AXIAL,
    BAD_IDENTIFIER,
    DANGLING_REF,
    DUPLICATE_ID,
    IDENT_RE,
    INVERTED,
    SYNTAX,
    UNMAPPED_EDGE,
    VMAP_NOT_INVOLUTION,
    Dart,
    InvalidModelError,
    Model,
    ValidationReport,
    Violation,
    validate,
)

HEADER = "involution-graph v1"


class ParseError(InvalidModelError):
    def __init__(self, report: ValidationReport):
        super().__init__(report, "cannot parse model")


def parse_model(text: str) -> Model:
    """Parse and validate; raises :class:`ParseError` listing every problem."""
    problems: List[Violation] = []

    def bad(rule: str, lineno: int, what: str) -> None:
        problems.append(Violation(rule, f"line {lineno}: {what}"))

    vertices: List[str] = []
    vseen: Dict[str, int] = {}
    edges: Dict[str, Tuple[str, str]] = {}
    vmap_lines: List[Tuple[int, str, str]] = []
    emap_lines: List[Tuple[int, str, str, str]] = []
    header_seen = False

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line != HEADER:
                bad(SYNTAX, lineno, f"expected header {HEADER!r}")
                break
            header_seen = True
            continue
        tok = line.split()
        for t in tok[1:]:
            if not IDENT_RE.match(t):
                bad(BAD_IDENTIFIER, lineno, repr(t))
        kw = tok[0]
        if kw == "vertex" and len(tok) == 2:
            if tok[1] in vseen:
                bad(DUPLICATE_ID, lineno, f"vertex {tok[1]} (first on line {vseen[tok[1]]})")
            else:
                vseen[tok[1]] = lineno
                vertices.append(tok[1])
        elif kw == "edge" and len(tok) == 4:
            if tok[1] in edges:
                bad(DUPLICATE_ID, lineno, f"edge {tok[1]}")
            else:
                edges[tok[1]] = (tok[2], tok[3])
        elif kw == "vmap" and len(tok) == 3:
            vmap_lines.append((lineno, tok[1], tok[2]))
        elif kw == "emap" and len(tok) == 4:
            emap_lines.append((lineno, tok[1], tok[2], tok[3]))
        else:
            bad(SYNTAX, lineno, f"unrecognised line {line!r}")
    if not header_seen and not problems:
        problems.append(Violation(SYNTAX, "line 1: missing header"))

    vertex_map = {v: v for v in vertices}
    mapped_by: Dict[str, int] = {}
    for lineno, a, b in vmap_lines:
        if a not in vseen or b not in vseen:
            bad(DANGLING_REF, lineno, f"vmap {a} {b}")
            continue
        if a == b:
            if a in mapped_by:
                bad(DUPLICATE_ID, lineno, f"vmap for {a}")
            continue
        if a in mapped_by or b in mapped_by:
            if vertex_map[a] == b:
                bad(DUPLICATE_ID, lineno, f"vmap {a} {b}")
            else:
                bad(VMAP_NOT_INVOLUTION, lineno, f"vmap {a} {b} conflicts with line {mapped_by.get(a) or mapped_by.get(b)}")
            continue
        vertex_map[a] = b
        vertex_map[b] = a
        mapped_by[a] = mapped_by[b] = lineno

    dart_map: Dict[Dart, Dart] = {}
    edge_types: Dict[str, str] = {}
    emapped: Dict[str, int] = {}
    for lineno, e, f, tag in emap_lines:
        if e not in edges or f not in edges:
            bad(DANGLING_REF, lineno, f"emap {e} {f}")
            continue
        if e in emapped or f in emapped:
            bad(DUPLICATE_ID, lineno, f"emap for {e if e in emapped else f}")
            continue
        if e == f:
            if tag == AXIAL:
                dart_map[(e, 0)], dart_map[(e, 1)] = (e, 0), (e, 1)
            elif tag == INVERTED:
                dart_map[(e, 0)], dart_map[(e, 1)] = (e, 1), (e, 0)
            else:
                bad(SYNTAX, lineno, f"self emap needs axial|inverted, got {tag!r}")
                continue
            edge_types[e] = tag
        else:
            if tag not in ("fwd", "rev"):
                bad(SYNTAX, lineno, f"emap between distinct edges needs fwd|rev, got {tag!r}")
                continue
            j = 0 if tag == "fwd" else 1
            for i in (0, 1):
                a, b = (e, i), (f, i ^ j)
                dart_map[a] = b
                dart_map[b] = a
        emapped[e] = emapped[f] = lineno

    for e in edges:
        if e in emapped:
            continue
        a, b = edges[e]
        if vertex_map.get(a, a) == a and vertex_map.get(b, b) == b:
            dart_map[(e, 0)], dart_map[(e, 1)] = (e, 0), (e, 1)
            edge_types[e] = AXIAL
        else:
            problems.append(Violation(UNMAPPED_EDGE, f"edge {e}"))

    m = Model(tuple(vertices), edges, vertex_map, dart_map, edge_types)
    report = validate(m)
    if problems:
        reported = {p.rule for p in problems}
        extra = tuple(v for v in report.violations if v.rule not in reported)
        raise ParseError(ValidationReport(tuple(problems) + extra))
    if not report.ok:
        raise ParseError(report)
    return m


def serialize_model(m: Model) -> str:
    """Canonical text: sorted sections, each edge written smaller endpoint first.

    Edges stored with the larger endpoint first have their darts relabelled
    on output; ``fwd``/``rev`` tags are recomputed accordingly.
    """
    flip = {e: int(a > b) for e, (a, b) in m.edges.items()}

    def out(d: Dart) -> Dart:
        return (d[0], d[1] ^ flip[d[0]])

    lines = [HEADER]
    lines += [f"vertex {v}" for v in m.vertices]
    for e in sorted(m.edges):
        a, b = sorted(m.edges[e])
        lines.append(f"edge {e} {a} {b}")
    for v in m.vertices:
        w = m.vertex_map[v]
        if v < w:
            lines.append(f"vmap {v} {w}")
    for e in sorted(m.edges):
        f = m.edge_image(e)
        if f == e:
            lines.append(f"emap {e} {e} {m.self_edge_kind(e)}")
        elif e < f:
            # image of the relabelled first dart of e
            first = (e, 0 ^ flip[e])
            img = out(m.dart_map[first])
            lines.append(f"emap {e} {f} {'fwd' if img == (f, 0) else 'rev'}")
    return "\n".join(lines) + "\n"


def canonically_oriented(m: Model) -> bool:
    return all(a <= b for a, b in m.edges.values())
