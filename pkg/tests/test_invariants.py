import pytest

from handlebody_inv.canonical import build_free, build_nonfree
from handlebody_inv.invariants import (
    FixedSetSummary,
    boundary_data,
    fixed_set,
    genus,
    invariant_record,
    is_free,
    quotient,
)

from conftest import (
    antipodal_cycle,
    axial_loop_model,
    bouquet_inverted,
    inverted_edge_model,
    inverted_loop_model,
)


def test_genus_examples():
    assert genus(build_nonfree(1, 0, 0)) == 0
    assert genus(build_free(1)) == 3
    m = build_nonfree(1, 1, 1)
    assert (len(m.vertices), len(m.edges)) == (2, 5)
    assert genus(m) == 4


def test_fixed_set_examples():
    assert fixed_set(axial_loop_model()) == FixedSetSummary(0, 1)
    assert fixed_set(inverted_loop_model()) == FixedSetSummary(2, 0)
    assert fixed_set(bouquet_inverted(2)) == FixedSetSummary(3, 0)
    for n in range(4):
        assert fixed_set(build_free(n)) == FixedSetSummary(0, 0)


def test_is_free_examples():
    assert is_free(build_free(0))
    assert not is_free(axial_loop_model())
    m = inverted_edge_model()
    assert not is_free(m)
    assert fixed_set(m) == FixedSetSummary(1, 0)


@pytest.mark.parametrize("n", range(5))
def test_quotient_free(n):
    assert quotient(build_free(n)).quotient_genus == n + 1


@pytest.mark.parametrize("n,m,l", [(1, 0, 0), (0, 1, 0), (2, 0, 0), (1, 1, 1), (3, 2, 1), (0, 2, 3), (5, 0, 2)])
def test_quotient_nonfree(n, m, l):
    q = quotient(build_nonfree(n, m, l))
    assert q.quotient_genus == m + l
    assert (q.branch_arcs, q.branch_circles) == (n, m)


def test_quotient_of_hyperelliptic_solid_torus():
    q = quotient(inverted_loop_model())
    assert q.quotient_graph.vertices == ("mirror_e", "v")
    assert q.quotient_graph.edges == (("e", "v", "mirror_e"),)
    assert q.quotient_genus == 0


def test_boundary_examples():
    bd = boundary_data(build_nonfree(2, 0, 0))
    assert (bd.boundary_fixed_points, bd.boundary_quotient_genus) == (4, 0)
    bd = boundary_data(build_free(1))
    assert (bd.boundary_fixed_points, bd.boundary_quotient_genus) == (0, 2)
    bd = boundary_data(build_nonfree(1, 1, 1))
    assert (bd.boundary_fixed_points, bd.boundary_quotient_genus) == (2, 2)


def test_record_key_order():
    rec = invariant_record(antipodal_cycle(4))
    assert list(rec) == [
        "genus", "free", "n", "m", "quotient_genus", "boundary_fixed_points", "boundary_quotient_genus",
    ]
    assert rec["free"] and rec["genus"] == 1 and rec["quotient_genus"] == 1


def test_census_properties(census6):
    for m in census6:
        g = genus(m)
        fs = fixed_set(m)
        free = is_free(m)
        assert free == (fs == FixedSetSummary(0, 0))
        if free:
            assert g % 2 == 1
        else:
            assert (fs.n_arcs - g - 1) % 2 == 0
            assert fs.n_arcs + 2 * fs.m_circles <= g + 1
        q = quotient(m)
        assert q.quotient_graph.betti == q.quotient_genus
        assert 2 * (1 - q.quotient_genus) == (1 - g) + fs.n_arcs
        bd = boundary_data(m)
        assert bd.boundary_fixed_points % 2 == 0
        assert 2 - 2 * g == 2 * (2 - 2 * bd.boundary_quotient_genus) - bd.boundary_fixed_points
