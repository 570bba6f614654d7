"""Equivariant graph spines.

A spine is a connected multigraph (loops and parallel edges allowed) whose
vertices stand for 0-handles and whose edges stand for 1-handles.  Each edge
``e`` carries two darts ``(e, 0)`` and ``(e, 1)`` sitting at its first and
second endpoint.  An order-2 automorphism acts on vertices and darts; an
edge mapped onto itself is either *axial* (both darts fixed, the handle core
is fixed) or *inverted* (darts exchanged, a co-core diameter is fixed).
"""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Dart = Tuple[str, int]

AXIAL = "axial"
INVERTED = "inverted"
EDGE_TYPES = (AXIAL, INVERTED)

IDENT_RE = re.compile(r"[A-Za-z0-9_]+\Z")

# Rule identifiers reported by validate() and parse_model().
SYNTAX = "SYNTAX"
BAD_IDENTIFIER = "BAD_IDENTIFIER"
DUPLICATE_ID = "DUPLICATE_ID"
DANGLING_REF = "DANGLING_REF"
UNMAPPED_EDGE = "UNMAPPED_EDGE"
DISCONNECTED = "DISCONNECTED"
NEGATIVE_BETTI = "NEGATIVE_BETTI"
REVERSAL_NOT_FREE_INVOLUTION = "REVERSAL_NOT_FREE_INVOLUTION"
VMAP_NOT_INVOLUTION = "VMAP_NOT_INVOLUTION"
DMAP_NOT_INVOLUTION = "DMAP_NOT_INVOLUTION"
DMAP_REVERSAL = "DMAP_REVERSAL"
DMAP_ENDPOINT = "DMAP_ENDPOINT"
EDGE_TYPE_MISMATCH = "EDGE_TYPE_MISMATCH"
AXIAL_ENDPOINTS_NOT_FIXED = "AXIAL_ENDPOINTS_NOT_FIXED"
INVERTED_ENDPOINTS_NOT_SWAPPED = "INVERTED_ENDPOINTS_NOT_SWAPPED"
FIXED_DART_RULE = "FIXED_DART_RULE"

RULES = (
    SYNTAX,
    BAD_IDENTIFIER,
    DUPLICATE_ID,
    DANGLING_REF,
    UNMAPPED_EDGE,
    DISCONNECTED,
    NEGATIVE_BETTI,
    REVERSAL_NOT_FREE_INVOLUTION,
    VMAP_NOT_INVOLUTION,
    DMAP_NOT_INVOLUTION,
    DMAP_REVERSAL,
    DMAP_ENDPOINT,
    EDGE_TYPE_MISMATCH,
    AXIAL_ENDPOINTS_NOT_FIXED,
    INVERTED_ENDPOINTS_NOT_SWAPPED,
    FIXED_DART_RULE,
)

RULE_MESSAGES = {
    SYNTAX: "syntax error",
    BAD_IDENTIFIER: "identifiers must match [A-Za-z0-9_]+",
    DUPLICATE_ID: "duplicate declaration",
    DANGLING_REF: "reference to an undeclared identifier",
    UNMAPPED_EDGE: "edge with a non-fixed endpoint needs an emap line",
    DISCONNECTED: "graph must be non-empty and connected",
    NEGATIVE_BETTI: "Betti number must be non-negative",
    REVERSAL_NOT_FREE_INVOLUTION: "reversal must be a fixed-point-free involution",
    VMAP_NOT_INVOLUTION: "vertex map must be a total involution",
    DMAP_NOT_INVOLUTION: "dart map must be a total involution",
    DMAP_REVERSAL: "dart map must commute with reversal",
    DMAP_ENDPOINT: "dart map must cover the vertex map",
    EDGE_TYPE_MISMATCH: "self-edge tag disagrees with the dart map",
    AXIAL_ENDPOINTS_NOT_FIXED: "axial edge endpoints must be fixed",
    INVERTED_ENDPOINTS_NOT_SWAPPED: "inverted edge endpoints must be exchanged",
    FIXED_DART_RULE: "at most 2 fixed darts per vertex",
}


class SpineError(Exception):
    """Base class for errors raised by this package."""


class InvalidModelError(SpineError):
    def __init__(self, report: "ValidationReport", message: str = "invalid model"):
        self.report = report
        lines = [message] + [str(v) for v in report.violations]
        super().__init__("; ".join(lines))


class SearchBudgetExceeded(SpineError):
    """Raised when a backtracking search exceeds its node budget."""


@dataclass(frozen=True)
class Violation:
    rule: str
    location: str

    def __str__(self) -> str:
        return f"{self.rule}: {RULE_MESSAGES.get(self.rule, '')} ({self.location})"


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> List[str]:
        return [v.rule for v in self.violations]


@dataclass(frozen=True, eq=True)
class Model:
    """A spine graph together with an order-two automorphism.

    ``edges`` maps an edge id to its (first, second) endpoint; ``dart_map``
    and ``vertex_map`` are total; ``edge_types`` tags every self-mapped edge.
    Construction does not validate; use :func:`validate` or
    :meth:`Model.checked`.
    """

    vertices: Tuple[str, ...]
    edges: Mapping[str, Tuple[str, str]]
    vertex_map: Mapping[str, str]
    dart_map: Mapping[Dart, Dart]
    edge_types: Mapping[str, str] = field(default_factory=dict)

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", dict(self.edges))
        object.__setattr__(self, "vertex_map", dict(self.vertex_map))
        object.__setattr__(self, "dart_map", dict(self.dart_map))
        object.__setattr__(self, "edge_types", dict(self.edge_types))

    def checked(self) -> "Model":
        report = validate(self)
        if not report.ok:
            raise InvalidModelError(report)
        return self

    # -- graph accessors -------------------------------------------------

    @property
    def edge_ids(self) -> List[str]:
        return sorted(self.edges)

    def darts(self) -> List[Dart]:
        return [(e, i) for e in sorted(self.edges) for i in (0, 1)]

    @staticmethod
    def reverse(d: Dart) -> Dart:
        return (d[0], 1 - d[1])

    def endpoint(self, d: Dart) -> str:
        return self.edges[d[0]][d[1]]

    def darts_at(self) -> Dict[str, List[Dart]]:
        at: Dict[str, List[Dart]] = {v: [] for v in self.vertices}
        for d in self.darts():
            at.setdefault(self.endpoint(d), []).append(d)
        return at

    def degree(self, v: str) -> int:
        return sum(1 for d in self.darts() if self.endpoint(d) == v)

    @property
    def betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    # -- involution accessors -------------------------------------------

    def is_fixed_vertex(self, v: str) -> bool:
        return self.vertex_map[v] == v

    def fixed_vertices(self) -> List[str]:
        return [v for v in self.vertices if self.vertex_map[v] == v]

    def edge_image(self, e: str) -> str:
        return self.dart_map[(e, 0)][0]

    def self_edge_kind(self, e: str) -> Optional[str]:
        """``axial``/``inverted`` for self-mapped edges, ``None`` for moved ones."""
        img = self.dart_map[(e, 0)]
        if img == (e, 0):
            return AXIAL
        if img == (e, 1):
            return INVERTED
        return None

    def edge_orbits(self) -> List[Tuple[str, ...]]:
        """Edge orbits as sorted id tuples, ordered by smallest id."""
        seen = set()
        orbits = []
        for e in sorted(self.edges):
            if e in seen:
                continue
            f = self.edge_image(e)
            orbit = tuple(sorted({e, f}))
            seen.update(orbit)
            orbits.append(orbit)
        return orbits

    def orbit_of(self, e: str) -> Tuple[str, ...]:
        return tuple(sorted({e, self.edge_image(e)}))

    def fixed_darts_at(self, v: str) -> List[Dart]:
        """Fixed darts at ``v`` in pole-assignment order (edge id, then end)."""
        return [d for d in self.darts() if self.endpoint(d) == v and self.dart_map[d] == d]

    def is_connected(self) -> bool:
        return is_connected(self.vertices, self.edges.values())


def is_connected(vertices: Sequence[str], edge_ends: Iterable[Tuple[str, str]]) -> bool:
    vertices = list(vertices)
    if not vertices:
        return False
    adj: Dict[str, set] = defaultdict(set)
    for a, b in edge_ends:
        adj[a].add(b)
        adj[b].add(a)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen >= set(vertices)


def components(vertices: Sequence[str], edge_ends: Iterable[Tuple[str, str]]) -> List[List[str]]:
    """Connected components, each sorted, ordered by smallest member."""
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edge_ends:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: Dict[str, List[str]] = defaultdict(list)
    for v in vertices:
        groups[find(v)].append(v)
    return sorted(sorted(g) for g in groups.values())


# ---------------------------------------------------------------------------
# validation


def validate(m: Model) -> ValidationReport:
    """Check every structural rule; at most one violation per rule."""
    found: Dict[str, Violation] = {}

    def flag(rule: str, where: str) -> None:
        if rule not in found:
            found[rule] = Violation(rule, where)

    vset = set(m.vertices)
    for v in m.vertices:
        if not IDENT_RE.match(v):
            flag(BAD_IDENTIFIER, f"vertex {v!r}")
    for e in sorted(m.edges):
        if not IDENT_RE.match(e):
            flag(BAD_IDENTIFIER, f"edge {e!r}")
    for i in range(1, len(m.vertices)):
        if m.vertices[i] == m.vertices[i - 1]:
            flag(DUPLICATE_ID, f"vertex {m.vertices[i]}")
            break

    for e in sorted(m.edges):
        ends = m.edges[e]
        if len(ends) != 2:
            flag(SYNTAX, f"edge {e} must have two endpoints")
            continue
        for v in ends:
            if v not in vset:
                flag(DANGLING_REF, f"edge {e} endpoint {v}")

    if DANGLING_REF in found or SYNTAX in found:
        return ValidationReport(tuple(found[r] for r in RULES if r in found))

    # Darts are (edge, end) pairs, so the reversal (e,i) <-> (e,1-i) is a
    # fixed-point-free involution by construction.
    darts = m.darts()
    if len(darts) % 2:
        flag(REVERSAL_NOT_FREE_INVOLUTION, "odd dart count")

    if not m.is_connected():
        flag(DISCONNECTED, "no vertices" if not m.vertices else f"vertex {m.vertices[0]} component")
    if m.betti < 0:
        flag(NEGATIVE_BETTI, f"betti {m.betti}")

    vmap = m.vertex_map
    for v in m.vertices:
        w = vmap.get(v)
        if w is None or w not in vset or vmap.get(w) != v:
            flag(VMAP_NOT_INVOLUTION, f"vertex {v}")
            break
    for v in vmap:
        if v not in vset:
            flag(DANGLING_REF, f"vertex map entry {v}")
            break
    vmap_ok = VMAP_NOT_INVOLUTION not in found

    dset = set(darts)
    dmap = m.dart_map
    for d in darts:
        img = dmap.get(d)
        if img is None or img not in dset or dmap.get(img) != d:
            flag(DMAP_NOT_INVOLUTION, f"dart {d[0]}.{d[1]}")
            break
    for d in dmap:
        if d not in dset:
            flag(DANGLING_REF, f"dart map entry {d[0]}.{d[1]}")
            break
    if DMAP_NOT_INVOLUTION in found:
        return ValidationReport(tuple(found[r] for r in RULES if r in found))

    for d in darts:
        if dmap[m.reverse(d)] != m.reverse(dmap[d]):
            flag(DMAP_REVERSAL, f"dart {d[0]}.{d[1]}")
            break
    if vmap_ok:
        for d in darts:
            if m.endpoint(dmap[d]) != vmap[m.endpoint(d)]:
                flag(DMAP_ENDPOINT, f"dart {d[0]}.{d[1]}")
                break

    for e in sorted(m.edges):
        kind = m.self_edge_kind(e)
        tag = m.edge_types.get(e)
        if kind != tag:
            flag(EDGE_TYPE_MISMATCH, f"edge {e} tagged {tag} but maps as {kind or 'moved'}")
        a, b = m.edges[e]
        if not vmap_ok:
            continue
        if tag == AXIAL and (vmap[a] != a or vmap[b] != b):
            flag(AXIAL_ENDPOINTS_NOT_FIXED, f"edge {e}")
        if tag == INVERTED and (vmap[a] != b or (a == b and vmap[a] != a)):
            flag(INVERTED_ENDPOINTS_NOT_SWAPPED, f"edge {e}")
    for e in sorted(m.edge_types):
        if e not in m.edges:
            flag(DANGLING_REF, f"edge type entry {e}")
            break
        if m.edge_types[e] not in EDGE_TYPES:
            flag(EDGE_TYPE_MISMATCH, f"edge {e} has unknown tag {m.edge_types[e]!r}")

    fixed_count: Dict[str, int] = defaultdict(int)
    for d in darts:
        if dmap[d] == d:
            fixed_count[m.endpoint(d)] += 1
    for v in m.vertices:
        if fixed_count[v] > 2:
            flag(FIXED_DART_RULE, f"vertex {v} has {fixed_count[v]} fixed darts")
            break

    return ValidationReport(tuple(found[r] for r in RULES if r in found))


# ---------------------------------------------------------------------------
# construction helpers


class ModelBuilder:
    """Incremental construction of models with oriented edges.

    Edges are stored with the lexicographically smaller endpoint first so
    builder output is already in canonical dart orientation.
    """

    def __init__(self, edge_prefix: str = "e"):
        self.vertices: List[str] = []
        self.vertex_map: Dict[str, str] = {}
        self.edges: Dict[str, Tuple[str, str]] = {}
        self.dart_map: Dict[Dart, Dart] = {}
        self.edge_types: Dict[str, str] = {}
        self._prefix = edge_prefix
        self._counter = 0

    @classmethod
    def from_model(cls, m: Model, edge_prefix: str = "e") -> "ModelBuilder":
        b = cls(edge_prefix)
        b.vertices = list(m.vertices)
        b.vertex_map = dict(m.vertex_map)
        b.edges = dict(m.edges)
        b.dart_map = dict(m.dart_map)
        b.edge_types = dict(m.edge_types)
        return b

    def fresh_edge(self) -> str:
        while True:
            self._counter += 1
            name = f"{self._prefix}{self._counter}"
            if name not in self.edges:
                return name

    def fresh_vertex(self, prefix: str) -> str:
        taken = set(self.vertices)
        i = 1
        while f"{prefix}{i}" in taken:
            i += 1
        return f"{prefix}{i}"

    def fixed_vertex(self, v: str) -> str:
        self.vertices.append(v)
        self.vertex_map[v] = v
        return v

    def vertex_pair(self, v: str, w: str) -> Tuple[str, str]:
        self.vertices += [v, w]
        self.vertex_map[v] = w
        self.vertex_map[w] = v
        return v, w

    def _place(self, name: str, u: str, w: str) -> Tuple[Dart, Dart]:
        """Store edge u-w oriented; return the darts at u and at w."""
        if u <= w:
            self.edges[name] = (u, w)
            return (name, 0), (name, 1)
        self.edges[name] = (w, u)
        return (name, 1), (name, 0)

    def self_edge(self, u: str, w: str, kind: str, name: Optional[str] = None) -> str:
        name = name or self.fresh_edge()
        du, dw = self._place(name, u, w)
        if kind == AXIAL:
            self.dart_map[du] = du
            self.dart_map[dw] = dw
        elif kind == INVERTED:
            self.dart_map[du] = dw
            self.dart_map[dw] = du
        else:
            raise ValueError(f"unknown self-edge kind {kind!r}")
        self.edge_types[name] = kind
        return name

    def moved_pair(self, u: str, w: str, names: Optional[Tuple[str, str]] = None) -> Tuple[str, str]:
        """Add e: u-w and its image: s(u)-s(w), exchanged by the involution."""
        e = names[0] if names else self.fresh_edge()
        f = names[1] if names else self.fresh_edge()
        su, sw = self.vertex_map[u], self.vertex_map[w]
        eu, ew = self._place(e, u, w)
        fu, fw = self._place(f, su, sw)
        for a, b in ((eu, fu), (ew, fw)):
            self.dart_map[a] = b
            self.dart_map[b] = a
        return e, f

    def build(self) -> Model:
        return Model(tuple(self.vertices), self.edges, self.vertex_map, self.dart_map, self.edge_types)


# ---------------------------------------------------------------------------
# equivariant isomorphism

DEFAULT_ISO_BUDGET = 1_000_000


def _dart_signature(m: Model, d: Dart, deg: Mapping[str, int]) -> tuple:
    e = d[0]
    a, b = m.edges[e]
    v = m.endpoint(d)
    w = m.endpoint(m.reverse(d))
    kind = m.self_edge_kind(e) or "moved"
    img = m.edge_image(e)
    parallel_image = kind == "moved" and set(m.edges[img]) == {a, b}
    return (
        kind,
        a == b,
        parallel_image,
        m.is_fixed_vertex(v),
        m.is_fixed_vertex(w),
        m.vertex_map[v] == w,
        deg[v],
        deg[w],
    )


def _profile(m: Model) -> tuple:
    deg = {v: 0 for v in m.vertices}
    for d in m.darts():
        deg[m.endpoint(d)] += 1
    sigs = sorted(_dart_signature(m, d, deg) for d in m.darts())
    fixed = len(m.fixed_vertices())
    return (len(m.vertices), len(m.edges), fixed, tuple(sigs))


def equivariant_isomorphic(m1: Model, m2: Model, budget: int = DEFAULT_ISO_BUDGET) -> bool:
    """Decide whether a spine isomorphism conjugates one involution to the other.

    Exhaustive backtracking over dart assignments; raises
    :class:`SearchBudgetExceeded` after ``budget`` search nodes.
    """
    if _profile(m1) != _profile(m2):
        return False
    if not m1.edges:
        return True  # both single fixed vertices once profiles agree

    deg1 = {v: m1.degree(v) for v in m1.vertices}
    deg2 = {v: m2.degree(v) for v in m2.vertices}
    sig1 = {d: _dart_signature(m1, d, deg1) for d in m1.darts()}
    sig2 = {d: _dart_signature(m2, d, deg2) for d in m2.darts()}
    at1 = m1.darts_at()
    at2 = m2.darts_at()
    darts1 = m1.darts()
    nodes = [0]

    def extend(vm: Dict[str, str], dm: Dict[Dart, Dart], d: Dart, d2: Dart):
        """Assign d -> d2 and close under reversal, involution and endpoints."""
        vm = dict(vm)
        dm = dict(dm)
        used_v = set(vm.values())
        used_d = set(dm.values())
        stack = [(d, d2)]
        while stack:
            x, y = stack.pop()
            if x in dm:
                if dm[x] != y:
                    return None
                continue
            if y in used_d or sig1[x] != sig2[y]:
                return None
            dm[x] = y
            used_d.add(y)
            stack.append((m1.reverse(x), m2.reverse(y)))
            stack.append((m1.dart_map[x], m2.dart_map[y]))
            vpairs = [(m1.endpoint(x), m2.endpoint(y))]
            while vpairs:
                a, b = vpairs.pop()
                if a in vm:
                    if vm[a] != b:
                        return None
                    continue
                if b in used_v:
                    return None
                vm[a] = b
                used_v.add(b)
                vpairs.append((m1.vertex_map[a], m2.vertex_map[b]))
        return vm, dm

    def search(vm, dm) -> bool:
        nodes[0] += 1
        if nodes[0] > budget:
            raise SearchBudgetExceeded(f"equivariant isomorphism search exceeded {budget} nodes")
        if len(dm) == len(darts1):
            return all(m1.edge_types.get(e) == m2.edge_types.get(dm[(e, 0)][0]) for e in m1.edges)
        # next unassigned dart at an already-mapped vertex (exists by connectivity)
        for x in darts1:
            if x not in dm and m1.endpoint(x) in vm:
                break
        target = vm[m1.endpoint(x)]
        used = set(dm.values())
        for y in at2[target]:
            if y in used or sig1[x] != sig2[y]:
                continue
            state = extend(vm, dm, x, y)
            if state is not None and search(*state):
                return True
        return False

    d0 = darts1[0]
    for y in m2.darts():
        if sig1[d0] != sig2[y]:
            continue
        state = extend({}, {}, d0, y)
        if state is not None and search(*state):
            return True
    return False
