"""Exhaustive isomorph-free enumeration of spines and the theorem check."""
from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Set, Tuple

from .canonical import builder_edge_count, enumerate_classes
from .invariants import boundary_data, fixed_set, genus, is_free, quotient
from .model import Model, SpineError, equivariant_isomorphic, validate
from .skeleton import Key, Skeleton, augmentations, canonical_key, from_key, to_model

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 5_000_000

FixedTuple = Tuple[bool, int, int]


class CensusBudgetExceeded(SpineError):
    pass


def _children(args) -> List[Tuple[int, Key]]:
    key, max_edges, max_vertices, max_genus = args
    s = from_key(key)
    out = []
    for child in augmentations(s):
        if child.n_edges > max_edges or child.n_vertices > max_vertices:
            continue
        if max_genus is not None and child.betti > max_genus:
            continue
        out.append((child.n_edges, canonical_key(child)))
    return out


def enumerate_keys(
    max_edges: int,
    max_genus: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> List[Key]:
    """Canonical keys of all connected valid spines within the bounds, sorted.

    The search runs over orbit-connected skeletons (whose lift may still be
    disconnected) since those are closed under the one-orbit deletions that
    make augmentation exhaustive.  Edge count, vertex count and ``E - V`` only
    grow along augmentations, so pruning on them is exact.
    """
    if max_edges < 0:
        raise ValueError("max_edges must be >= 0")
    max_vertices = max_edges + 1
    levels: List[Set[Key]] = [set() for _ in range(max_edges + 1)]
    levels[0].add(canonical_key(Skeleton(1, 0, ())))
    if max_vertices >= 2 and (max_genus is None or max_genus >= -1):
        levels[0].add(canonical_key(Skeleton(0, 1, ())))
    seen = set(levels[0])
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        for w in range(max_edges + 1):
            parents = sorted(levels[w])
            tasks = [(k, max_edges, max_vertices, max_genus) for k in parents]
            results = pool.map(_children, tasks, chunksize=64) if pool else map(_children, tasks)
            for kids in results:
                for size, key in kids:
                    if key not in seen:
                        seen.add(key)
                        levels[size].add(key)
                        if len(seen) > budget:
                            raise CensusBudgetExceeded(
                                f"more than {budget} skeletons; lower --max-edges"
                            )
            log.debug("level %d: %d skeletons", w, len(levels[w]))
    finally:
        if pool:
            pool.shutdown()
    keep = []
    for key in seen:
        s = from_key(key)
        if s.lift_connected():
            keep.append(key)
    keep.sort(key=lambda k: (from_key(k).n_edges, from_key(k).n_vertices, k))
    return keep


def enumerate_models(
    max_edges: int,
    max_genus: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    confirm: bool = False,
) -> Iterator[Model]:
    """One model per equivariant-isomorphism class with at most ``max_edges`` edges.

    ``max_genus`` additionally prunes to spines of genus at most that value.
    With ``confirm`` every emitted model is re-checked against all earlier
    models with the same invariants using the dart-level isomorphism search.
    """
    buckets: Dict[tuple, List[Model]] = defaultdict(list)
    for key in enumerate_keys(max_edges, max_genus, budget, jobs):
        m = to_model(from_key(key))
        if confirm:
            report = validate(m)
            if not report.ok:
                raise AssertionError(f"generator produced an invalid model: {report}")
            fs = fixed_set(m)
            bucket = buckets[(len(m.vertices), len(m.edges), is_free(m), fs.n_arcs, fs.m_circles)]
            for other in bucket:
                if equivariant_isomorphic(m, other):
                    raise AssertionError("distinct canonical keys for isomorphic spines")
            bucket.append(m)
        yield m


# ---------------------------------------------------------------------------
# theorem verification


def fixed_tuple(m: Model) -> FixedTuple:
    if is_free(m):
        return (True, 0, 0)
    fs = fixed_set(m)
    return (False, fs.n_arcs, fs.m_circles)


def tuple_label(t: FixedTuple) -> str:
    return "free" if t[0] else f"n={t[1]} m={t[2]}"


def theorem_allows(g: int, t: FixedTuple) -> bool:
    free, n, k = t
    if free:
        return g % 2 == 1
    return (n - g - 1) % 2 == 0 and 1 <= n + 2 * k <= g + 1


def identity_failures(m: Model) -> List[str]:
    """Closed-form identities every model must satisfy; empty when all hold."""
    problems = []
    g = genus(m)
    free = is_free(m)
    fs = fixed_set(m)
    n = fs.n_arcs
    try:
        q = quotient(m)
    except SpineError as exc:
        return [f"quotient: {exc}"]
    gq = q.quotient_genus
    if 2 * (1 - gq) != (1 - g) + n:
        problems.append("orbifold Euler identity")
    bd = boundary_data(m)
    if 2 - 2 * g != 2 * (2 - 2 * gq) - bd.boundary_fixed_points:
        problems.append("Riemann-Hurwitz boundary identity")
    if bd.boundary_fixed_points != 2 * n or bd.boundary_quotient_genus != gq:
        problems.append("boundary data")
    if free and (fs.n_arcs or fs.m_circles):
        problems.append("free model with fixed points")
    return problems


@dataclass
class CensusReport:
    size_bound: int
    max_genus: int
    realized: Dict[int, Dict[FixedTuple, int]]
    predicted: Dict[int, Set[FixedTuple]]
    under_covered: List[int]
    counterexamples: List[str] = field(default_factory=list)
    models_checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def as_record(self) -> dict:
        return {
            "counterexamples": list(self.counterexamples),
            "max_edges": self.size_bound,
            "max_genus": self.max_genus,
            "models_checked": self.models_checked,
            "predicted": {
                str(g): sorted(tuple_label(t) for t in ts) for g, ts in sorted(self.predicted.items())
            },
            "realized": {
                str(g): {tuple_label(t): c for t, c in sorted(self.realized.get(g, {}).items())}
                for g in sorted(self.predicted)
            },
            "under_covered": list(self.under_covered),
            "verdict": self.verdict,
        }


def census_table(models: List[Model]) -> Dict[int, Dict[FixedTuple, int]]:
    table: Dict[int, Dict[FixedTuple, int]] = defaultdict(lambda: defaultdict(int))
    for m in models:
        table[genus(m)][fixed_tuple(m)] += 1
    return {g: dict(sorted(row.items())) for g, row in sorted(table.items())}


def verify_theorem(max_genus: int, max_edges: int, jobs: int = 1, budget: int = DEFAULT_BUDGET) -> CensusReport:
    if max_genus < 0 or max_edges < 0:
        raise ValueError("bounds must be non-negative")
    predicted = {g: {c.fixed_tuple() for c in enumerate_classes(g)} for g in range(max_genus + 1)}
    under = [
        g
        for g in range(max_genus + 1)
        if any(builder_edge_count(c) > max_edges for c in enumerate_classes(g))
    ]
    realized: Dict[int, Dict[FixedTuple, int]] = defaultdict(lambda: defaultdict(int))
    bad: List[str] = []
    checked = 0
    from .textfmt import serialize_model

    for m in enumerate_models(max_edges, max_genus, budget, jobs):
        checked += 1
        g = genus(m)
        t = fixed_tuple(m)
        realized[g][t] += 1
        if not theorem_allows(g, t):
            bad.append(f"g={g} {tuple_label(t)} not predicted:\n{serialize_model(m)}")
        for problem in identity_failures(m):
            bad.append(f"g={g} {tuple_label(t)} {problem}:\n{serialize_model(m)}")
    for g in range(max_genus + 1):
        if g in under:
            continue
        for t in sorted(predicted[g] - set(realized.get(g, {}))):
            bad.append(f"g={g} {tuple_label(t)} predicted but not realized")
    return CensusReport(
        max_edges,
        max_genus,
        {g: dict(sorted(row.items())) for g, row in sorted(realized.items())},
        predicted,
        under,
        bad,
        checked,
    )
