"""Brute-force census of labelled spines, deduplicated by dart-level search.

Independent of the orbit-level enumerator: graphs are grown edge by edge and
deduplicated by trying every vertex permutation, every involution is found by
exhaustive search, and isomorph rejection uses ``equivariant_isomorphic``.
"""
from __future__ import annotations

from collections import defaultdict
from itertools import permutations

from handlebody_inv.invariants import fixed_set, genus, is_free
from handlebody_inv.model import Model, equivariant_isomorphic, validate


def _canon_graph(n, edges):
    best = None
    for perm in permutations(range(n)):
        enc = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
        if best is None or enc < best:
            best = enc
    return (n, best)


def connected_multigraphs(max_edges):
    """Unlabelled connected multigraphs (loops allowed) by edge count."""
    levels = [{(1, ())}]
    for k in range(1, max_edges + 1):
        nxt = set()
        for n, edges in levels[-1]:
            for a in range(n):
                for b in range(a, n + 1):
                    nn = n + 1 if b == n else n
                    nxt.add(_canon_graph(nn, edges + ((a, b),)))
        levels.append(nxt)
    return levels


def _vertex_involutions(n):
    def rec(rest, acc):
        if not rest:
            yield dict(acc)
            return
        v, rest = rest[0], rest[1:]
        acc[v] = v
        yield from rec(rest, acc)
        for i, w in enumerate(rest):
            acc[v], acc[w] = w, v
            yield from rec(rest[:i] + rest[i + 1:], acc)
            del acc[w]
        del acc[v]

    yield from rec(list(range(n)), {})


def labelled_models(n, edges):
    names = [f"v{i}" for i in range(n)]
    enames = [f"e{i}" for i in range(len(edges))]
    ends = {enames[k]: (names[a], names[b]) for k, (a, b) in enumerate(edges)}
    for pi in _vertex_involutions(n):
        vmap = {names[v]: names[pi[v]] for v in range(n)}

        def options(e, f):
            a, b = ends[e]
            out = []
            for j in (0, 1):
                if ends[f][j] == vmap[a] and ends[f][1 - j] == vmap[b]:
                    out.append(j)
            return out

        def rec(i, dmap):
            if i == len(enames):
                types = {}
                for e in enames:
                    if dmap[(e, 0)] == (e, 0):
                        types[e] = "axial"
                    elif dmap[(e, 0)] == (e, 1):
                        types[e] = "inverted"
                yield Model(tuple(names), ends, vmap, dict(dmap), types)
                return
            e = enames[i]
            if (e, 0) in dmap:
                yield from rec(i + 1, dmap)
                return
            for f in enames[i:]:
                if (f, 0) in dmap:
                    continue
                for j in options(e, f):
                    new = dict(dmap)
                    for t in (0, 1):
                        new[(e, t)] = (f, t ^ j)
                        new[(f, t ^ j)] = (e, t)
                    yield from rec(i + 1, new)

        yield from rec(0, {})


def brute_census(max_edges):
    """Isomorphism classes of valid spines, grouped by (E, V, g, free, n, m)."""
    reps = defaultdict(list)
    for level in connected_multigraphs(max_edges):
        for n, edges in sorted(level):
            for m in labelled_models(n, edges):
                if not validate(m).ok:
                    continue
                fs = fixed_set(m)
                key = (len(m.edges), len(m.vertices), genus(m), is_free(m), fs.n_arcs, fs.m_circles)
                if not any(equivariant_isomorphic(m, r) for r in reps[key]):
                    reps[key].append(m)
    return reps
