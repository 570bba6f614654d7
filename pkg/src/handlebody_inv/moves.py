"""Equivariant moves on spines: splitting, handle attachment, contraction."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .invariants import Pole, invariant_tuple, is_free, pole_complex
from .model import AXIAL, INVERTED, Model, ModelBuilder, SpineError, components


class MoveError(SpineError):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")


# ---------------------------------------------------------------------------
# splitting along a disk orbit

AXIAL_ORBIT = "axial"
MOVED_PAIR = "moved_pair"


@dataclass(frozen=True)
class Component:
    vertices: Tuple[str, ...]
    edges: Tuple[str, ...]
    betti: int
    preserved: bool
    model: Optional[Model] = field(default=None, compare=False)


@dataclass(frozen=True)
class SplitResult:
    orbit_kind: str
    orbit: Tuple[str, ...]
    components: Tuple[Component, ...]
    connected_after: bool

    @property
    def betti_sum(self) -> int:
        return sum(c.betti for c in self.components)


def expected_betti_sum(g: int, orbit_kind: str, n_components: int) -> int:
    """Betti bookkeeping after deleting one (axial) or two (moved) edges."""
    removed = 1 if orbit_kind == AXIAL_ORBIT else 2
    return g - 1 - removed + n_components


def splittable_orbits(m: Model) -> List[Tuple[str, ...]]:
    return [o for o in m.edge_orbits() if m.self_edge_kind(o[0]) != INVERTED]


def _restrict(m: Model, vertices, edges) -> Model:
    vs = set(vertices)
    es = set(edges)
    return Model(
        tuple(vertices),
        {e: m.edges[e] for e in edges},
        {v: m.vertex_map[v] for v in vertices if m.vertex_map[v] in vs},
        {d: m.dart_map[d] for d in m.dart_map if d[0] in es},
        {e: t for e, t in m.edge_types.items() if e in es},
    )


def split(m: Model, edge: str) -> SplitResult:
    """Delete the orbit of ``edge`` and report the pieces."""
    if edge not in m.edges:
        raise MoveError("unknown-edge", f"no edge {edge!r}")
    kind = m.self_edge_kind(edge)
    if kind == INVERTED:
        raise MoveError(
            "inverted-orbit",
            f"edge {edge} is inverted; its co-core meets the fixed set in an arc",
        )
    orbit = m.orbit_of(edge)
    rest = [e for e in sorted(m.edges) if e not in orbit]
    comps = components(m.vertices, [m.edges[e] for e in rest])
    out = []
    for comp in comps:
        cset = set(comp)
        cedges = tuple(e for e in rest if m.edges[e][0] in cset)
        preserved = all(m.vertex_map[v] in cset for v in comp)
        out.append(
            Component(
                tuple(comp),
                cedges,
                len(cedges) - len(comp) + 1,
                preserved,
                _restrict(m, comp, cedges) if preserved else None,
            )
        )
    return SplitResult(
        AXIAL_ORBIT if kind == AXIAL else MOVED_PAIR,
        orbit,
        tuple(out),
        len(out) == 1,
    )


def hyperelliptic_diagnostic(m: Model) -> bool:
    """True when every splittable orbit disconnects the spine (vacuous if none)."""
    if is_free(m):
        raise MoveError("free-model", "the diagnostic applies to non-free involutions")
    return all(not split(m, orbit[0]).connected_after for orbit in splittable_orbits(m))


# ---------------------------------------------------------------------------
# attachments


def free_poles(m: Model) -> List[Pole]:
    return pole_complex(m).free_poles()


def attach_axial_edge(m: Model, pole_a: Pole, pole_b: Pole, name: Optional[str] = None) -> Model:
    pc = pole_complex(m)
    if pole_a == pole_b:
        raise MoveError("same-pole", f"pole {pole_a} given twice")
    for p in (pole_a, pole_b):
        if p not in pc.poles:
            raise MoveError("not-a-pole", f"{p} is not a pole of a fixed vertex")
        if p in pc.occupied.values():
            raise MoveError("occupied-pole", f"pole {p} already carries a fixed dart")
    b = ModelBuilder.from_model(m)
    b.self_edge(pole_a[0], pole_b[0], AXIAL, name=name or b.fresh_edge())
    return b.build()


def attach_moved_pair(m: Model, u: str, w: str, names: Optional[Tuple[str, str]] = None) -> Model:
    for v in (u, w):
        if v not in m.vertex_map:
            raise MoveError("unknown-vertex", f"no vertex {v!r}")
    b = ModelBuilder.from_model(m)
    if names is None:
        names = (b.fresh_edge(), b.fresh_edge())
    b.moved_pair(u, w, names=names)
    return b.build()


def attach_inverted_loop(m: Model, v: str, name: Optional[str] = None) -> Model:
    if v not in m.vertex_map:
        raise MoveError("unknown-vertex", f"no vertex {v!r}")
    if m.vertex_map[v] != v:
        raise MoveError("not-fixed", f"vertex {v} is not fixed")
    b = ModelBuilder.from_model(m)
    b.self_edge(v, v, INVERTED, name=name or b.fresh_edge())
    return b.build()


# ---------------------------------------------------------------------------
# contraction


def contraction_check(m: Model, edge: str) -> Optional[MoveError]:
    """Return the reason ``edge``'s orbit may not be contracted, or None."""
    if edge not in m.edges:
        return MoveError("unknown-edge", f"no edge {edge!r}")
    a, b = m.edges[edge]
    if a == b:
        return MoveError("loop", f"edge {edge} is a loop")
    kind = m.self_edge_kind(edge)
    if kind == INVERTED:
        return MoveError("inverted", f"edge {edge} is inverted")
    if kind == AXIAL:
        merged = len(m.fixed_darts_at(a)) + len(m.fixed_darts_at(b)) - 2
        if merged > 2:
            return MoveError("fixed-dart-overflow", f"merging {a},{b} leaves {merged} fixed darts")
        return None
    f = m.edge_image(edge)
    fa, fb = m.edges[f]
    shared = {a, b} & {fa, fb}
    if not shared:
        return None
    if len(shared) == 2:
        return MoveError("parallel-to-image", f"edge {edge} is parallel to its image {f}")
    (v,) = shared
    if m.vertex_map[v] != v:
        return MoveError("shared-moved-vertex", f"edges {edge},{f} share the non-fixed vertex {v}")
    return None


def contract(m: Model, edge: str) -> Model:
    """Collapse the orbit of ``edge``, merging endpoints equivariantly."""
    err = contraction_check(m, edge)
    if err is not None:
        raise err
    a, b = m.edges[edge]
    orbit = set(m.orbit_of(edge))
    if m.self_edge_kind(edge) == AXIAL:
        keep, gone = min(a, b), max(a, b)
        rename = {gone: keep}
    elif m.vertex_map[a] == a or m.vertex_map[b] == b:
        fixed = a if m.vertex_map[a] == a else b
        other = b if fixed == a else a
        rename = {other: fixed, m.vertex_map[other]: fixed}
    else:
        keep, gone = min(a, b), max(a, b)
        rename = {gone: keep, m.vertex_map[gone]: m.vertex_map[keep]}

    vertices = [v for v in m.vertices if v not in rename]
    edges = {
        e: (rename.get(x, x), rename.get(y, y))
        for e, (x, y) in m.edges.items()
        if e not in orbit
    }
    vertex_map = {v: m.vertex_map[v] for v in vertices}
    dart_map = {d: img for d, img in m.dart_map.items() if d[0] not in orbit}
    edge_types = {e: t for e, t in m.edge_types.items() if e not in orbit}
    return Model(tuple(vertices), edges, vertex_map, dart_map, edge_types)


def legal_contractions(m: Model) -> List[Tuple[str, ...]]:
    return [o for o in m.edge_orbits() if contraction_check(m, o[0]) is None]


@dataclass(frozen=True)
class TraceStep:
    move: str
    orbit: Tuple[str, ...]
    before: Tuple[int, bool, int, int]
    after: Tuple[int, bool, int, int]

    def line(self) -> str:
        g, _, n, k = self.after
        return f"{self.move} {'+'.join(self.orbit)} g={g} n={n} m={k}"


@dataclass(frozen=True)
class Trace:
    steps: Tuple[TraceStep, ...] = ()

    def lines(self) -> List[str]:
        return [s.line() for s in self.steps]

    def constant(self) -> bool:
        return all(s.before == s.after for s in self.steps)


def normalize(m: Model) -> Tuple[Model, Trace]:
    """Contract legal orbits, smallest edge id first, until none remain."""
    steps = []
    current = m
    while True:
        legal = legal_contractions(current)
        if not legal:
            return current, Trace(tuple(steps))
        orbit = legal[0]
        before = invariant_tuple(current)
        current = contract(current, orbit[0])
        steps.append(TraceStep("contract", orbit, before, invariant_tuple(current)))
