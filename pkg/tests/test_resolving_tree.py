import pytest

from braids.braid_core import BraidWord, closure_components
from braids.resolving_tree import (
    brute_force_min_depth,
    build_tree,
    child_change,
    child_resolve,
    count_nodes,
    depth_formula,
    iter_nodes,
    leaves,
    tree_depth,
)
from errors import MoveError, ScopeError, SearchExhausted


def test_children_of_the_trefoil():
    trefoil = BraidWord((1, 1, 1), n=2)
    change = child_change(trefoil, 0)
    assert (change.letters, change.n, change.p) == ((), 1, 1)
    assert child_resolve(trefoil, 0) == BraidWord((1, 1), n=2)


def test_children_destabilize_fully():
    assert child_change(BraidWord((2, 2, 2, 1, 1), n=3), 0) == BraidWord((1, 1), n=2)
    assert child_resolve(BraidWord((2, 2, 1, 1), n=3), 0) == BraidWord((1, 1), n=2)


def test_change_can_leave_a_two_component_unlink():
    child = child_change(BraidWord((1, 1, 2), n=3), 0)
    assert (child.letters, child.n, child.p) == ((), 2, 1)
    assert closure_components(child) == 2


def test_children_need_a_square():
    with pytest.raises(MoveError):
        child_change(BraidWord((1, 2, 1), n=3), 0)
    with pytest.raises(MoveError):
        child_resolve(BraidWord((1, 1), n=2), 1)


def test_hopf_link_tree():
    t = build_tree(BraidWord((1, 1), n=2))
    assert tree_depth(t) == 1
    assert count_nodes(t) == 3
    assert t.change.components == 2
    assert t.resolve.components == 1


@pytest.mark.parametrize(
    "letters, n, depth",
    [
        ((1,) * 7, 2, 6),
        ((2, 1, 2, 3, 1, 3, 1, 2), 4, 5),
        ((1, 2, 1, 2), 3, 2),
        ((1, 2), 3, 0),
        ((1, 3, 2, 4, 1, 3, 2, 4, 2), 5, 5),
    ],
)
def test_tree_depth_matches_formula(letters, n, depth):
    w = BraidWord(letters, n=n)
    t = build_tree(w)
    assert depth_formula(w) == depth
    assert tree_depth(t) == depth
    for node, _ in iter_nodes(t):
        if not node.is_leaf:
            assert max(node.change.chi, node.resolve.chi) <= node.chi - 1
    assert all(leaf.chi == 0 and leaf.components >= 1 for leaf in leaves(t))


def test_tree_scope():
    with pytest.raises(ScopeError):
        build_tree(BraidWord((1, -1, 1), n=2))
    with pytest.raises(ScopeError):
        depth_formula(BraidWord((1, 1), n=3, p=2))


@pytest.mark.parametrize(
    "letters, n, expected",
    [
        ((1, 1), 2, 1),
        ((1, 1, 1), 2, 2),
        ((1, 1, 1, 1), 2, 3),
        ((1, 2, 1, 2), 3, 2),
    ],
)
def test_brute_force_matches_formula(letters, n, expected):
    assert brute_force_min_depth(BraidWord(letters, n=n), depth_budget=6) == expected


def test_brute_force_limits():
    with pytest.raises(ScopeError):
        brute_force_min_depth(BraidWord((1,) * 9, n=2), depth_budget=6)
    with pytest.raises(SearchExhausted):
        brute_force_min_depth(BraidWord((1, 1, 1), n=2), depth_budget=1)
