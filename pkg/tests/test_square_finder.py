import pytest

from braids.braid_core import BraidWord
from braids.square_finder import (
    MoveRule,
    SquareWitness,
    TraceMove,
    UnlinkResult,
    ensure_side_condition,
    find_square,
    replay_trace,
    side_condition_holds,
)
from errors import MoveError, ScopeError

FOUR_STRAND_WORD = BraidWord((2, 1, 2, 3, 1, 3, 1, 2), n=4)


def assert_valid_witness(original: BraidWord, found: SquareWitness):
    letters = found.word.letters
    assert letters[found.position] == letters[found.position + 1] == found.generator
    assert side_condition_holds(found.word, found.generator)
    assert replay_trace(original, found.trace) == found.word
    assert found.word.length - found.word.p == original.length - original.p


def test_adjacent_square_needs_no_moves():
    found = find_square(BraidWord((1, 1), n=2))
    assert isinstance(found, SquareWitness)
    assert (found.position, found.generator, found.trace) == (0, 1, ())


def test_braid_relation_then_destabilization():
    original = BraidWord((1, 2, 1, 2), n=3)
    found = find_square(original)
    assert found.word == BraidWord((1, 1, 1), n=2)
    assert found.position == 0
    assert [m.rule for m in found.trace] == [MoveRule.YANG_BAXTER, MoveRule.ROTATE, MoveRule.DESTABILIZE, MoveRule.ROTATE]
    assert_valid_witness(original, found)


@pytest.mark.parametrize(
    "w",
    [
        FOUR_STRAND_WORD,
        BraidWord((1, 2, 3, 1, 2, 3), n=4),
        BraidWord((3, 2, 1, 1, 2, 3, 2), n=4),
        BraidWord((1, 3, 2, 4, 1, 3, 2, 4, 2), n=5),
        BraidWord((2, 1, 2, 2, 1), n=3),
    ],
)
def test_witness_is_valid(w):
    assert_valid_witness(w, find_square(w))


def test_unlink_has_no_square():
    found = find_square(BraidWord((1, 2), n=3))
    assert isinstance(found, UnlinkResult)
    assert found.components == 1
    assert (found.word.letters, found.word.p) == ((), 1)


def test_rejects_words_outside_scope():
    with pytest.raises(ScopeError):
        find_square(BraidWord((1, -1, 1), n=2))
    with pytest.raises(ScopeError):
        find_square(BraidWord((2, 2), n=3))


def test_side_condition_fixup():
    original = BraidWord((1, 1, 2), n=3)
    assert not side_condition_holds(original, 1)
    fixed = ensure_side_condition(original, 0)
    assert fixed.word == BraidWord((1, 1), n=2)
    assert fixed.position == 0
    assert replay_trace(original, fixed.trace) == fixed.word


def test_side_condition_fixup_preconditions():
    with pytest.raises(MoveError):
        ensure_side_condition(BraidWord((1, 1), n=2), 0)
    with pytest.raises(MoveError):
        ensure_side_condition(BraidWord((1, 2, 1), n=3), 0)


def test_trace_move_serializes():
    assert TraceMove(MoveRule.ROTATE, 3).to_dict() == {"rule": "rotate", "position": 3}
    assert TraceMove(MoveRule.TRIM).to_dict() == {"rule": "trim", "position": None}
