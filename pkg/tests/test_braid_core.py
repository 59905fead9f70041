import pytest

from braids.braid_core import (
    BraidWord,
    closure_components,
    closure_permutation,
    commute_step,
    complexity,
    cyclic_rotate,
    destabilize,
    free_reduce,
    insert_cancelling_pair,
    is_strictly_positive,
    is_unlink_leaf,
    markov_reduce,
    mirror,
    parse_word,
    split_factors,
    trim_prefix,
    word_text,
    yang_baxter_step,
)
from errors import BraidWordError, MoveError, ScopeError


def word(*letters, n=None, p=None):
    n = n if n is not None else max((abs(k) for k in letters), default=0) + 1
    return BraidWord(tuple(letters), n=n, p=p)


@pytest.mark.parametrize(
    "text, strands, letters, n",
    [
        ("1 2 -1", None, (1, 2, -1), 3),
        ("1,1,1", None, (1, 1, 1), 2),
        ("  2 , 1  ", 4, (2, 1), 4),
        ("", None, (), 1),
    ],
)
def test_parse_word(text, strands, letters, n):
    w = parse_word(text, strands)
    assert w.letters == letters
    assert w.n == n
    assert w.p == n


@pytest.mark.parametrize("text, strands", [("1 x", None), ("0", None), ("3", 3), ("1", 0)])
def test_parse_word_rejects(text, strands):
    with pytest.raises(BraidWordError):
        parse_word(text, strands)


def test_braid_word_validates_prefix():
    with pytest.raises(BraidWordError):
        BraidWord((2,), n=3, p=2)
    with pytest.raises(BraidWordError):
        BraidWord((), n=2, p=3)


def test_word_text_round_trip():
    assert word_text(parse_word("1 -2 3")) == "1 -2 3"
    assert str(word(1, 1)) == "[1 1] in B_2[2]"


def test_free_reduce():
    assert free_reduce(word(1, -1, 2)).letters == (2,)
    assert free_reduce(word(1, 2, -2, -1)).letters == ()
    assert free_reduce(word(1, 1, 1)).letters == (1, 1, 1)


def test_commute_step():
    assert commute_step(word(1, 3), 0).letters == (3, 1)
    assert commute_step(word(1, -3, 2), 0).letters == (-3, 1, 2)
    with pytest.raises(MoveError):
        commute_step(word(1, 2), 0)
    with pytest.raises(MoveError):
        commute_step(word(1, 3), 1)


def test_yang_baxter_step():
    assert yang_baxter_step(word(1, 2, 1), 0).letters == (2, 1, 2)
    assert yang_baxter_step(word(3, 2, 1, 2), 1).letters == (3, 1, 2, 1)
    assert yang_baxter_step(word(-1, -2, -1), 0).letters == (-2, -1, -2)
    with pytest.raises(MoveError):
        yang_baxter_step(word(1, -2, 1), 0)
    with pytest.raises(MoveError):
        yang_baxter_step(word(1, 3, 1), 0)


def test_cyclic_rotate():
    assert cyclic_rotate(word(1, 2, 3), 1).letters == (2, 3, 1)
    assert cyclic_rotate(word(1, 2, 3), 4).letters == (2, 3, 1)
    assert cyclic_rotate(word(n=3), 2).letters == ()


@pytest.mark.parametrize("w", [word(1, -1, 2, -2, 1), word(2, 1, -1, -2, 3), word(1, 2, 1, 2), word(3, -3, 3)])
def test_free_reduce_is_idempotent(w):
    once = free_reduce(w)
    assert free_reduce(once) == once


@pytest.mark.parametrize("w", [word(1, 2, 3), word(2, 1, 2, 3, 1, 3, 1, 2), word(-1, 2, -1)])
def test_full_rotation_is_identity(w):
    assert cyclic_rotate(w, w.length) == w


@pytest.mark.parametrize(
    "w, move, pos",
    [
        (word(1, 3, 2), commute_step, 0),
        (word(2, 4, -1, 3), commute_step, 0),
        (word(1, 2, 1, 3), yang_baxter_step, 0),
        (word(3, 2, 3, 1), yang_baxter_step, 0),
        (word(2, -1, -2, -1), yang_baxter_step, 1),
    ],
)
def test_moves_keep_the_closure_permutation(w, move, pos):
    assert closure_permutation(move(w, pos)) == closure_permutation(w)


def test_destabilize():
    out = destabilize(word(1, 1, 2))
    assert (out.letters, out.n, out.p) == ((1, 1), 2, 2)
    out = destabilize(word(2, 1, 1))
    assert (out.letters, out.n, out.p) == ((1, 1), 2, 2)
    out = destabilize(BraidWord((1,), n=3, p=2))
    assert (out.letters, out.n, out.p) == ((), 2, 1)
    with pytest.raises(MoveError):
        destabilize(word(1, 2, 2))
    with pytest.raises(MoveError):
        destabilize(word(n=1))


def test_trim_prefix_and_markov_reduce():
    trimmed = trim_prefix(BraidWord((1, 1), n=3))
    assert (trimmed.n, trimmed.p) == (3, 2)
    reduced = markov_reduce(word(1, 2))
    assert (reduced.letters, reduced.n, reduced.p) == ((), 1, 1)
    reduced = markov_reduce(word(1, 1, 2))
    assert (reduced.letters, reduced.n, reduced.p) == ((1, 1), 2, 2)
    reduced = markov_reduce(BraidWord((2,), n=3))
    assert (reduced.letters, reduced.n, reduced.p) == ((), 2, 1)


def test_insert_cancelling_pair_and_mirror():
    assert insert_cancelling_pair(word(1), 0, 1).letters == (1, -1, 1)
    assert insert_cancelling_pair(word(1, 2), 2, -1).letters == (1, 2, -1, 1)
    with pytest.raises(MoveError):
        insert_cancelling_pair(word(1), 0, 2)
    assert mirror(word(1, -2)).letters == (-1, 2)


def test_strict_positivity_and_complexity():
    assert is_strictly_positive(word(1, 2, 1, 2))
    assert not is_strictly_positive(BraidWord((2, 2), n=3))
    assert not is_strictly_positive(word(1, -1))
    assert complexity(word(1, 1, 1)) == 2
    assert complexity(word(1, 2, 1, 2)) == 2
    with pytest.raises(ScopeError):
        complexity(BraidWord((2, 2), n=3))


@pytest.mark.parametrize(
    "w, components",
    [
        (word(1, 1), 2),
        (word(1, 1, 1), 1),
        (BraidWord((), n=3), 3),
        (word(1, 2), 1),
        (word(1, -1, 1), 1),
    ],
)
def test_closure_components(w, components):
    assert closure_components(w) == components


def test_unlink_leaf():
    assert is_unlink_leaf(word(1, 2))
    assert is_unlink_leaf(BraidWord((), n=2, p=1))
    assert not is_unlink_leaf(word(1, 1))


def test_split_factors():
    factors = split_factors(BraidWord((1, 1, 3, 3), n=5))
    assert [(f.letters, f.n) for f in factors] == [((1, 1), 2), ((1, 1), 2), ((), 1)]
    assert [(f.letters, f.n) for f in split_factors(word(1, 2, 1))] == [((1, 2, 1), 3)]
    with pytest.raises(ScopeError):
        split_factors(word(1, -2))
