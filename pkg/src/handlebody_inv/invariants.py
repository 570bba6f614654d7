"""Invariants of an encoded involution: genus, fixed set, quotient, boundary data."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .model import AXIAL, INVERTED, Model, SpineError


class ConsistencyError(SpineError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class FixedSetSummary:
    n_arcs: int
    m_circles: int


@dataclass(frozen=True)
class QuotientGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str, str], ...]  # (label, end, end)
    mirrors: Tuple[str, ...]

    @property
    def betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1


@dataclass(frozen=True)
class QuotientData:
    quotient_graph: QuotientGraph
    quotient_genus: int
    branch_arcs: int
    branch_circles: int


@dataclass(frozen=True)
class BoundaryData:
    boundary_fixed_points: int
    boundary_quotient_genus: int


def genus(m: Model) -> int:
    return len(m.edges) - len(m.vertices) + 1


def is_free(m: Model) -> bool:
    if m.fixed_vertices():
        return False
    return all(m.self_edge_kind(e) is None for e in m.edges)


Pole = Tuple[str, int]


@dataclass(frozen=True)
class PoleComplex:
    """Fixed axes of balls joined through axial handle cores.

    Nodes are poles ``(vertex, 1|2)``; every fixed vertex contributes the
    segment between its poles and every axial edge a segment between the
    poles its two darts occupy.
    """

    poles: Tuple[Pole, ...]
    occupied: Dict[Tuple[str, int], Pole]  # dart -> pole
    segments: Tuple[Tuple[Pole, Pole, str], ...]  # (pole, pole, label)
    inverted_edges: Tuple[str, ...]

    def components(self) -> List[Tuple[List[Pole], int]]:
        """Components as (sorted pole list, segment count)."""
        parent = {p: p for p in self.poles}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b, _ in self.segments:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: Dict[Pole, List[Pole]] = {}
        for p in self.poles:
            groups.setdefault(find(p), []).append(p)
        seg_count: Dict[Pole, int] = {}
        for a, _, _ in self.segments:
            r = find(a)
            seg_count[r] = seg_count.get(r, 0) + 1
        return sorted((sorted(g), seg_count.get(r, 0)) for r, g in groups.items())

    def free_poles(self) -> List[Pole]:
        used = set(self.occupied.values())
        return [p for p in self.poles if p not in used]

    def arc_of(self) -> Dict[Pole, int]:
        """Map each free pole to the index of its path component."""
        used = set(self.occupied.values())
        result = {}
        for idx, (group, _) in enumerate(self.components()):
            for p in group:
                if p not in used:
                    result[p] = idx
        return result


def pole_complex(m: Model) -> PoleComplex:
    poles: List[Pole] = []
    occupied: Dict[Tuple[str, int], Pole] = {}
    segments: List[Tuple[Pole, Pole, str]] = []
    for v in m.fixed_vertices():
        poles += [(v, 1), (v, 2)]
        segments.append(((v, 1), (v, 2), v))
        for slot, d in enumerate(m.fixed_darts_at(v), start=1):
            occupied[d] = (v, slot)
    inverted = []
    for e in sorted(m.edges):
        kind = m.self_edge_kind(e)
        if kind == AXIAL:
            segments.append((occupied[(e, 0)], occupied[(e, 1)], e))
        elif kind == INVERTED:
            inverted.append(e)
    return PoleComplex(tuple(poles), occupied, tuple(segments), tuple(inverted))


def fixed_set(m: Model) -> FixedSetSummary:
    pc = pole_complex(m)
    paths = cycles = 0
    for group, nseg in pc.components():
        # every pole has degree <= 2, so a component is a cycle iff |E| = |V|
        if nseg == len(group):
            cycles += 1
        else:
            paths += 1
    return FixedSetSummary(paths + len(pc.inverted_edges), cycles)


def _orbit_name(m: Model, v: str) -> str:
    w = m.vertex_map[v]
    return v if v == w else "~".join(sorted((v, w)))


def quotient_graph(m: Model) -> QuotientGraph:
    vertices = sorted({_orbit_name(m, v) for v in m.vertices})
    edges = []
    mirrors = []
    for orbit in m.edge_orbits():
        e = orbit[0]
        a, b = m.edges[e]
        qa, qb = _orbit_name(m, a), _orbit_name(m, b)
        if m.self_edge_kind(e) == INVERTED:
            leaf = f"mirror_{e}"
            mirrors.append(leaf)
            edges.append(("+".join(orbit), qa, leaf))
        else:
            edges.append(("+".join(orbit), qa, qb))
    return QuotientGraph(tuple(sorted(vertices + mirrors)), tuple(edges), tuple(mirrors))


def quotient_genus_formula(g: int, free: bool, n: int) -> int:
    if free:
        return (g + 1) // 2
    return (g - n + 1) // 2


def quotient(m: Model) -> QuotientData:
    qg = quotient_graph(m)
    g = genus(m)
    free = is_free(m)
    fs = fixed_set(m)
    expected = quotient_genus_formula(g, free, fs.n_arcs)
    numer = g + 1 if free else g - fs.n_arcs + 1
    if numer % 2 or qg.betti != expected:
        raise ConsistencyError(
            f"quotient Betti {qg.betti} disagrees with closed formula {numer}/2 "
            f"(g={g}, free={free}, n={fs.n_arcs})"
        )
    return QuotientData(qg, qg.betti, fs.n_arcs, fs.m_circles)


def boundary_data(m: Model) -> BoundaryData:
    q = quotient(m)
    return BoundaryData(2 * q.branch_arcs, q.quotient_genus)


def invariant_record(m: Model) -> Dict[str, object]:
    """Summary in the fixed key order used by the JSON output."""
    fs = fixed_set(m)
    q = quotient(m)
    return {
        "genus": genus(m),
        "free": is_free(m),
        "n": fs.n_arcs,
        "m": fs.m_circles,
        "quotient_genus": q.quotient_genus,
        "boundary_fixed_points": 2 * fs.n_arcs,
        "boundary_quotient_genus": q.quotient_genus,
    }


def invariant_tuple(m: Model) -> Tuple[int, bool, int, int]:
    """(genus, free?, n, m) -- the quantity every move must account for."""
    fs = fixed_set(m)
    return (genus(m), is_free(m), fs.n_arcs, fs.m_circles)
