import pytest

from handlebody_inv.canonical import CanonicalForm, build_nonfree
from handlebody_inv.classify import TheoremViolation, classify, same_class
from handlebody_inv.model import Model, equivariant_isomorphic

from conftest import antipodal_cycle, axial_loop_model, bouquet_inverted, inverted_loop_model


def test_examples():
    assert classify(inverted_loop_model()).display == "L_1^{2,0}"
    assert classify(antipodal_cycle(4)) == CanonicalForm.free(0)
    for g in range(1, 6):
        assert classify(bouquet_inverted(g)) == CanonicalForm.nonfree(g + 1, 0, 0)


def test_same_class_examples():
    chain = build_nonfree(2, 0, 0)
    assert same_class(inverted_loop_model(), chain)
    assert not same_class(axial_loop_model(), inverted_loop_model())
    assert same_class(chain, chain)


def test_classify_total_on_census(census6):
    for m in census6:
        c = classify(m)
        assert c.genus == len(m.edges) - len(m.vertices) + 1


def test_iso_refines_class(census5):
    sample = census5[::7]
    for a in sample:
        for b in sample:
            if equivariant_isomorphic(a, b):
                assert same_class(a, b)


def test_theorem_violation_on_unvalidated_input():
    # a dart map of order three makes an odd number of "moved" edges
    ends = {x: ("a", "b") for x in "efg"}
    rot = {"e": "f", "f": "g", "g": "e"}
    m = Model(("a", "b"), ends, {"a": "b", "b": "a"}, {(x, i): (rot[x], 1 - i) for x in "efg" for i in (0, 1)})
    with pytest.raises(TheoremViolation, match="involution-graph v1"):
        classify(m)
