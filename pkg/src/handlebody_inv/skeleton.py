"""Orbit-level description of spines and its canonical labelling.

A spine up to equivariant isomorphism is determined by its vertex orbits
(fixed vertices and swapped pairs) and a multiset of edge-orbit
descriptors.  Pairs carry a gauge: which member is called ``x`` and which
``s(x)``.  Only pair-to-pair moved orbits see the gauge, as a same/twist bit.

Descriptor codes (first tuple entry):

    AX (i, j)     axial edge between fixed i <= j
    IL (i,)       inverted loop at fixed i
    MF (i, j)     moved pair between fixed i <= j
    MN (i, p)     moved pair from fixed i to both members of pair p
    IE (p,)       inverted edge x_p - s(x_p)
    ML (p,)       moved loops at x_p and s(x_p)
    MX (p,)       moved parallel pair x_p - s(x_p)
    MS (p, q, t)  moved pair x_p - x_q (t=0) or x_p - s(x_q) (t=1), p < q
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .model import AXIAL, INVERTED, Model, ModelBuilder

AX, IL, MF, MN, IE, ML, MX, MS = range(8)
WEIGHT = {AX: 1, IL: 1, IE: 1, MF: 2, MN: 2, ML: 2, MX: 2, MS: 2}
NAMES = {AX: "AX", IL: "IL", MF: "MF", MN: "MN", IE: "IE", ML: "ML", MX: "MX", MS: "MS"}

Desc = Tuple[int, ...]
Key = Tuple[int, int, Tuple[Desc, ...]]


@dataclass(frozen=True)
class Skeleton:
    n_fixed: int
    n_pairs: int
    descs: Tuple[Desc, ...]

    @property
    def n_vertices(self) -> int:
        return self.n_fixed + 2 * self.n_pairs

    @property
    def n_edges(self) -> int:
        return sum(WEIGHT[d[0]] for d in self.descs)

    @property
    def betti(self) -> int:
        return self.n_edges - self.n_vertices + 1

    def fixed_darts(self) -> List[int]:
        count = [0] * self.n_fixed
        for d in self.descs:
            if d[0] == AX:
                count[d[1]] += 1
                count[d[2]] += 1
        return count

    def lift_connected(self) -> bool:
        """Connectivity of the spine itself (not just of the orbit graph)."""
        F = self.n_fixed
        size = F + 2 * self.n_pairs
        if size == 0:
            return False
        parent = list(range(size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        def x(p, side):
            return F + 2 * p + side

        for d in self.descs:
            c = d[0]
            if c in (AX, MF):
                union(d[1], d[2])
            elif c == MN:
                union(d[1], x(d[2], 0))
                union(d[1], x(d[2], 1))
            elif c in (IE, MX):
                union(x(d[1], 0), x(d[1], 1))
            elif c == MS:
                p, q, t = d[1:]
                union(x(p, 0), x(q, t))
                union(x(p, 1), x(q, 1 - t))
        root = find(0)
        return all(find(i) == root for i in range(size))

    def with_desc(self, d: Desc, n_fixed: Optional[int] = None, n_pairs: Optional[int] = None) -> "Skeleton":
        return Skeleton(
            self.n_fixed if n_fixed is None else n_fixed,
            self.n_pairs if n_pairs is None else n_pairs,
            tuple(sorted(self.descs + (d,))),
        )


# ---------------------------------------------------------------------------
# canonical labelling by colour refinement and individualisation


def _contributions(s: Skeleton) -> List[List[tuple]]:
    """Per node: (descriptor code, neighbour node or -1). Gauge-blind."""
    F = s.n_fixed
    nbrs: List[List[tuple]] = [[] for _ in range(F + s.n_pairs)]
    for d in s.descs:
        c = d[0]
        if c in (AX, MF):
            i, j = d[1], d[2]
            if i == j:
                nbrs[i].append((c, -1))
            else:
                nbrs[i].append((c, j))
                nbrs[j].append((c, i))
        elif c == IL:
            nbrs[d[1]].append((c, -1))
        elif c == MN:
            i, p = d[1], F + d[2]
            nbrs[i].append((c, p))
            nbrs[p].append((c, i))
        elif c in (IE, ML, MX):
            nbrs[F + d[1]].append((c, -1))
        else:
            p, q = F + d[1], F + d[2]
            nbrs[p].append((c, q))
            nbrs[q].append((c, p))
    return nbrs


def _rank(keys: Sequence) -> List[int]:
    order = {k: r for r, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(colors: List[int], nbrs: List[List[tuple]]) -> List[int]:
    while True:
        sigs = [
            (colors[v], tuple(sorted((c, colors[w] if w >= 0 else -1) for c, w in nbrs[v])))
            for v in range(len(colors))
        ]
        new = _rank(sigs)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _relabel(s: Skeleton, pos: Sequence[int], gauge: Sequence[int]) -> Tuple[Desc, ...]:
    F = s.n_fixed
    out = []
    for d in s.descs:
        c = d[0]
        if c in (AX, MF):
            a, b = pos[d[1]], pos[d[2]]
            out.append((c, min(a, b), max(a, b)))
        elif c == IL:
            out.append((c, pos[d[1]]))
        elif c == MN:
            out.append((c, pos[d[1]], pos[F + d[2]] - F))
        elif c in (IE, ML, MX):
            out.append((c, pos[F + d[1]] - F))
        else:
            p, q, t = d[1:]
            a, b = pos[F + p] - F, pos[F + q] - F
            out.append((c, min(a, b), max(a, b), t ^ gauge[p] ^ gauge[q]))
    out.sort()
    return tuple(out)


def canonical_key(s: Skeleton) -> Key:
    """Labelling-independent key; equal keys iff equivariantly isomorphic spines."""
    N = s.n_fixed + s.n_pairs
    if N == 0:
        return (0, 0, ())
    nbrs = _contributions(s)
    init = [0] * s.n_fixed + [1] * s.n_pairs
    has_twist_bits = any(d[0] == MS for d in s.descs)
    gauges = list(product((0, 1), repeat=s.n_pairs)) if has_twist_bits else [(0,) * s.n_pairs]
    best: List[Optional[Tuple[Desc, ...]]] = [None]

    def leaf(colors):
        pos = colors  # discrete colouring: colour rank is the new index
        for gauge in gauges:
            enc = _relabel(s, pos, gauge)
            if best[0] is None or enc < best[0]:
                best[0] = enc

    def search(colors):
        colors = _refine(colors, nbrs)
        if len(set(colors)) == N:
            leaf(colors)
            return
        counts: Dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        for v in range(N):
            if colors[v] == target:
                search(_rank([(colors[u], 0 if u == v else 1) for u in range(N)]))

    search(_rank(init))
    return (s.n_fixed, s.n_pairs, best[0])


def from_key(key: Key) -> Skeleton:
    return Skeleton(key[0], key[1], key[2])


# ---------------------------------------------------------------------------
# conversion to and from dart-level models


def vertex_names(s: Skeleton) -> Tuple[List[str], List[Tuple[str, str]]]:
    fixed = [f"f{i + 1}" for i in range(s.n_fixed)]
    pairs = [(f"p{p + 1}", f"q{p + 1}") for p in range(s.n_pairs)]
    return fixed, pairs


def to_model(s: Skeleton) -> Model:
    fixed, pairs = vertex_names(s)
    width = max(2, len(str(s.n_edges)))
    b = ModelBuilder()
    counter = [0]

    def name():
        counter[0] += 1
        return f"e{counter[0]:0{width}d}"

    for v in fixed:
        b.fixed_vertex(v)
    for x, y in pairs:
        b.vertex_pair(x, y)
    for d in s.descs:
        c = d[0]
        if c == AX:
            b.self_edge(fixed[d[1]], fixed[d[2]], AXIAL, name=name())
        elif c == IL:
            b.self_edge(fixed[d[1]], fixed[d[1]], INVERTED, name=name())
        elif c == IE:
            x, y = pairs[d[1]]
            b.self_edge(x, y, INVERTED, name=name())
        else:
            if c == MF:
                u, w = fixed[d[1]], fixed[d[2]]
            elif c == MN:
                u, w = fixed[d[1]], pairs[d[2]][0]
            elif c == ML:
                u = w = pairs[d[1]][0]
            elif c == MX:
                u, w = pairs[d[1]]
            else:
                p, q, t = d[1:]
                u, w = pairs[p][0], pairs[q][t]
            b.moved_pair(u, w, names=(name(), name()))
    return b.build()


def skeleton_of(m: Model) -> Skeleton:
    """Orbit-level description of a valid model."""
    fixed = m.fixed_vertices()
    fidx = {v: i for i, v in enumerate(fixed)}
    pairs = sorted({tuple(sorted((v, m.vertex_map[v]))) for v in m.vertices if m.vertex_map[v] != v})
    pidx: Dict[str, Tuple[int, int]] = {}
    for p, (x, y) in enumerate(pairs):
        pidx[x] = (p, 0)
        pidx[y] = (p, 1)
    descs = []
    for orbit in m.edge_orbits():
        e = orbit[0]
        a, b = m.edges[e]
        kind = m.self_edge_kind(e)
        if kind == AXIAL:
            i, j = sorted((fidx[a], fidx[b]))
            descs.append((AX, i, j))
        elif kind == INVERTED:
            descs.append((IL, fidx[a]) if a == b else (IE, pidx[a][0]))
        elif a in fidx and b in fidx:
            i, j = sorted((fidx[a], fidx[b]))
            descs.append((MF, i, j))
        elif a in fidx or b in fidx:
            i = fidx[a] if a in fidx else fidx[b]
            p = pidx[b][0] if a in fidx else pidx[a][0]
            descs.append((MN, i, p))
        else:
            (p, sa), (q, sb) = pidx[a], pidx[b]
            if p == q:
                descs.append((ML, p) if a == b else (MX, p))
            else:
                if p > q:
                    p, q, sa, sb = q, p, sb, sa
                descs.append((MS, p, q, sa ^ sb))
    return Skeleton(len(fixed), len(pairs), tuple(sorted(descs)))


def model_key(m: Model) -> Key:
    return canonical_key(skeleton_of(m))


# ---------------------------------------------------------------------------
# one-step augmentations


def augmentations(s: Skeleton) -> Iterator[Skeleton]:
    """Skeletons obtained by adding one edge orbit, possibly with a new vertex orbit.

    Every orbit-connected skeleton with at least one edge orbit arises this way
    from a smaller orbit-connected one: delete a non-bridge orbit of the orbit
    graph, or a leaf vertex orbit together with its only edge orbit.
    """
    F, P = s.n_fixed, s.n_pairs
    cap = s.fixed_darts()
    for i in range(F):
        for j in range(i, F):
            need_i = 2 if i == j else 1
            if cap[i] + need_i <= 2 and (i == j or cap[j] + 1 <= 2):
                yield s.with_desc((AX, i, j))
            yield s.with_desc((MF, i, j))
        yield s.with_desc((IL, i))
        for p in range(P):
            yield s.with_desc((MN, i, p))
    for p in range(P):
        yield s.with_desc((IE, p))
        yield s.with_desc((ML, p))
        yield s.with_desc((MX, p))
        for q in range(p + 1, P):
            yield s.with_desc((MS, p, q, 0))
            yield s.with_desc((MS, p, q, 1))
    # new fixed vertex F
    for i in range(F):
        if cap[i] < 2:
            yield s.with_desc((AX, i, F), n_fixed=F + 1)
        yield s.with_desc((MF, i, F), n_fixed=F + 1)
    for p in range(P):
        yield s.with_desc((MN, F, p), n_fixed=F + 1)
    # new pair P
    for i in range(F):
        yield s.with_desc((MN, i, P), n_pairs=P + 1)
    for p in range(P):
        yield s.with_desc((MS, p, P, 0), n_pairs=P + 1)


def describe(s: Skeleton) -> str:
    parts = [NAMES[d[0]] + "(" + ",".join(map(str, d[1:])) + ")" for d in s.descs]
    return f"F={s.n_fixed} P={s.n_pairs} " + " ".join(parts)
