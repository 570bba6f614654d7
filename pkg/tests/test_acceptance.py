"""Exit criteria. Each test records one PASS/FAIL line in the terminal summary."""
import random
import time
from itertools import combinations

import pytest

from handlebody_inv.canonical import build, enumerate_classes
from handlebody_inv.census import enumerate_models, verify_theorem
from handlebody_inv.classify import classify
from handlebody_inv.cli import run
from handlebody_inv.invariants import boundary_data, fixed_set, genus, is_free, pole_complex, quotient
from handlebody_inv.moves import attach_axial_edge, expected_betti_sum, normalize, split, splittable_orbits
from handlebody_inv.textfmt import parse_model, serialize_model

from conftest import ACCEPTANCE_LINES
from movecheck import check_random_moves

MAX_GENUS, MAX_EDGES = 4, 8


def record(number, title, ok, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} {detail}".rstrip())
    print(ACCEPTANCE_LINES[-1])
    assert ok, detail


@pytest.fixture(scope="module")
def theorem_run():
    start = time.perf_counter()
    report = verify_theorem(MAX_GENUS, MAX_EDGES)
    return report, time.perf_counter() - start


@pytest.fixture(scope="module")
def census():
    return list(enumerate_models(MAX_EDGES, MAX_GENUS))


def cli_lines(*argv):
    import io

    out = io.StringIO()
    code = run(list(argv), out, io.StringIO())
    return code, out.getvalue().splitlines()


def test_criterion_1_class_lists():
    start = time.perf_counter()
    ok0 = cli_lines("classes", "--genus", "0") == (0, ["L_0^{1,0}"])
    ok1 = cli_lines("classes", "--genus", "1") == (0, ["I_1", "L_1^{0,1}", "L_1^{2,0}"])
    elapsed = time.perf_counter() - start
    record(1, "class lists for genus 0 and 1", ok0 and ok1 and elapsed < 1.0, f"({elapsed:.3f}s)")


def test_criterion_2_theorem_census(theorem_run):
    report, elapsed = theorem_run
    ok = report.passed and not report.under_covered and elapsed < 300
    predicted_realized = all(report.predicted[g] == set(report.realized[g]) for g in report.predicted)
    record(
        2,
        f"verify --max-genus {MAX_GENUS} --max-edges {MAX_EDGES}",
        ok and predicted_realized,
        f"({report.models_checked} spines, {elapsed:.1f}s, {len(report.counterexamples)} counterexamples)",
    )


def test_criterion_3_quotient_formulas(census):
    bad = 0
    for m in census:
        g = genus(m)
        q = quotient(m)
        if is_free(m):
            bad += 2 * q.quotient_graph.betti != g + 1
        else:
            bad += 2 * q.quotient_graph.betti != g - fixed_set(m).n_arcs + 1
            bad += q.quotient_genus != q.branch_circles + (g + 1 - q.branch_arcs - 2 * q.branch_circles) // 2
    record(3, "quotient Betti matches closed formulas", bad == 0, f"({len(census)} spines, {bad} mismatches)")


def test_criterion_4_euler_identities(census):
    bad = 0
    for m in census:
        g = genus(m)
        n = fixed_set(m).n_arcs
        gq = quotient(m).quotient_genus
        bd = boundary_data(m)
        bad += 2 * (1 - gq) != (1 - g) + n
        bad += 2 - 2 * g != 2 * (2 - 2 * gq) - 2 * n
        bad += bd.boundary_fixed_points != 2 * n
    record(4, "orbifold Euler and Riemann-Hurwitz identities", bad == 0, f"({bad} failures)")


def test_criterion_5_round_trips(census):
    bad = 0
    classes = 0
    for g in range(0, 9):
        for c in enumerate_classes(g):
            classes += 1
            bad += classify(build(c)) != c
    for m in census:
        bad += parse_model(serialize_model(m)) != m
    record(5, "classify . build and parse . serialize", bad == 0,
           f"({classes} classes, {len(census)} spines, {bad} failures)")


def test_criterion_6_move_soundness(census):
    start = time.perf_counter()
    rng = random.Random(2024)
    seeds = [m for m in census if len(m.edges) <= 5]
    failures, per_move = check_random_moves(seeds, 1500, rng)
    trace_bad = 0
    for m in census:
        out, trace = normalize(m)
        trace_bad += not trace.constant() or classify(out) != classify(m)
    site_bad = pairs = 0
    for m in census:
        pc = pole_complex(m)
        arc = pc.arc_of()
        outcome = {}
        for p, q in combinations(pc.free_poles(), 2):
            pairs += 1
            outcome.setdefault(arc[p] == arc[q], set()).add(classify(attach_axial_edge(m, p, q)))
        site_bad += any(len(v) > 1 for v in outcome.values())
    elapsed = time.perf_counter() - start
    ok = not failures and not trace_bad and not site_bad and elapsed < 60 and all(per_move.values())
    record(6, "move soundness, normalize traces, site independence", ok,
           f"(1500 moves {per_move}, {pairs} pole pairs, {elapsed:.1f}s, "
           f"{len(failures)}+{trace_bad}+{site_bad} failures)")


def test_criterion_7_boundary_collisions():
    code, lines = cli_lines("collisions", "--genus", "4")
    got = {tuple(line.split()) for line in lines}
    expected = {
        ("L_4^{1,0}", "L_4^{1,1}"),
        ("L_4^{1,0}", "L_4^{1,2}"),
        ("L_4^{1,1}", "L_4^{1,2}"),
        ("L_4^{3,0}", "L_4^{3,1}"),
    }
    record(7, "collisions --genus 4", code == 0 and got == expected and len(lines) == 4)


def test_criterion_8_split_accounting(census):
    bad = orbits = 0
    for m in census:
        g = genus(m)
        for orbit in splittable_orbits(m):
            orbits += 1
            r = split(m, orbit[0])
            bad += r.betti_sum != expected_betti_sum(g, r.orbit_kind, len(r.components))
    record(8, "split Betti bookkeeping", bad == 0, f"({orbits} orbits, {bad} mismatches)")
