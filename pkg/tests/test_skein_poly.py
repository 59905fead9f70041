from fractions import Fraction

import pytest

from braids.braid_core import BraidWord
from braids.resolving_tree import build_tree, count_nodes, iter_nodes
from invariants.oracle import alexander_of_closure
from invariants.skein_poly import (
    HalfLaurent,
    alexander_from_tree,
    breadth,
    breadth_inequality_violations,
    conway_z,
    equal_up_to_unit,
    normalize_unit,
    subtree_polynomials,
    to_text,
)
from verification.verify_suite import sample_words

T_HALF = HalfLaurent({1: 1})
TREFOIL = HalfLaurent({2: 1, 0: -1, -2: 1})
HOPF = HalfLaurent({1: 1, -1: -1})


def test_arithmetic():
    assert T_HALF * T_HALF == HalfLaurent({2: 1})
    assert conway_z() * HalfLaurent.zero() == HalfLaurent.zero()
    assert conway_z() * conway_z() == HalfLaurent({-2: 1, 0: -2, 2: 1})
    assert TREFOIL - TREFOIL == HalfLaurent.zero()
    assert 3 * HalfLaurent.one() == HalfLaurent({0: 3})
    assert HalfLaurent({0: 0, 2: 1}).coeffs == {2: 1}


@pytest.mark.parametrize(
    "pz, expected",
    [
        (TREFOIL, Fraction(2)),
        (HalfLaurent.one(), Fraction(0)),
        (HalfLaurent.zero(), Fraction(0)),
        (HOPF, Fraction(1)),
        (HalfLaurent({3: 1, 0: 2}), Fraction(3, 2)),
    ],
)
def test_breadth(pz, expected):
    assert breadth(pz) == expected


def test_equal_up_to_unit():
    assert equal_up_to_unit(TREFOIL, HalfLaurent({4: -1, 2: 1, 0: -1}))
    assert not equal_up_to_unit(HalfLaurent.one(), HalfLaurent.zero())
    assert equal_up_to_unit(HOPF, HalfLaurent({0: 1, 2: -1}))
    assert not equal_up_to_unit(TREFOIL, HOPF)


def test_normalize_and_text():
    assert normalize_unit(TREFOIL) == HalfLaurent({4: 1, 2: -1, 0: 1})
    assert to_text(TREFOIL) == "t^2 - t^1 + 1"
    assert to_text(HOPF) == "-t^1 + 1"
    assert to_text(HalfLaurent.zero()) == "0"
    assert to_text(T_HALF, normalize=False) == "t^(1/2)"
    assert to_text(HalfLaurent({4: 3, -2: -1}), normalize=False) == "3*t^2 - t^-1"


def test_skein_evaluation():
    assert alexander_from_tree(build_tree(BraidWord((1, 1), n=2))) == conway_z()
    assert alexander_from_tree(build_tree(BraidWord((1, 1, 1), n=2))) == TREFOIL
    assert alexander_from_tree(build_tree(BraidWord((1, 2), n=3))) == HalfLaurent.one()


def test_subtree_breadths_respect_the_child_bound():
    tree = build_tree(BraidWord((2, 1, 2, 3, 1, 3, 1, 2), n=4))
    values = subtree_polynomials(tree)
    assert len(values) == count_nodes(tree)
    assert breadth_inequality_violations(tree) == 0
    assert values[id(tree)].breadth() == 5


def test_change_child_may_lose_more_than_one_in_breadth():
    tree = build_tree(BraidWord((1, 1, 1), n=2))
    values = subtree_polynomials(tree)
    assert values[id(tree)].breadth() == 2
    assert values[id(tree.change)] == HalfLaurent.one()
    assert values[id(tree.resolve)].breadth() == 1
    assert breadth_inequality_violations(tree) == 0


@pytest.mark.parametrize(
    "w",
    [
        BraidWord((1, 1, 1), n=2),
        BraidWord((1, 2, 1, 2), n=3),
        BraidWord((2, 1, 2, 3, 1, 3, 1, 2), n=4),
        BraidWord((1, 3, 2, 4, 1, 3, 2, 4, 2), n=5),
    ]
    + sample_words(seed=11, count=6, max_strands=4, max_length=9),
)
def test_every_node_matches_its_closure(w):
    tree = build_tree(w)
    values = subtree_polynomials(tree)
    for node, _ in iter_nodes(tree):
        assert equal_up_to_unit(values[id(node)], alexander_of_closure(node.word)), node.word
    assert breadth_inequality_violations(tree) == 0
