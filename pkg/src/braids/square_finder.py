import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Tuple

from braids.braid_core import (
    BraidWord,
    closure_components,
    commute_step,
    cyclic_rotate,
    destabilize,
    is_strictly_positive,
    trim_prefix,
    yang_baxter_step,
)
from errors import MoveError, ScopeError
from helpers import logged_method

LOGGER = logging.getLogger(__name__)


class MoveRule(Enum):
    COMMUTE = "commute"
    YANG_BAXTER = "yang_baxter"
    ROTATE = "rotate"
    DESTABILIZE = "destabilize"
    TRIM = "trim"


@dataclass(frozen=True)
class TraceMove:
    """One rewriting move. position is the letter index, or the rotation amount for ROTATE."""

    rule: MoveRule
    position: Optional[int] = None

    def to_dict(self) -> dict:
        return {"rule": self.rule.value, "position": self.position}


@dataclass(frozen=True)
class SquareWitness:
    word: BraidWord
    position: int
    generator: int
    trace: Tuple[TraceMove, ...] = field(default=())


@dataclass(frozen=True)
class UnlinkResult:
    word: BraidWord
    trace: Tuple[TraceMove, ...]
    components: int


def apply_move(w: BraidWord, move: TraceMove) -> BraidWord:
    match move.rule:
        case MoveRule.COMMUTE:
            return commute_step(w, move.position)
        case MoveRule.YANG_BAXTER:
            return yang_baxter_step(w, move.position)
        case MoveRule.ROTATE:
            return cyclic_rotate(w, move.position)
        case MoveRule.DESTABILIZE:
            return destabilize(w)
        case MoveRule.TRIM:
            return trim_prefix(w)
    raise MoveError(f"Unknown move {move}")


@logged_method
def replay_trace(w: BraidWord, trace: Iterable[TraceMove]) -> BraidWord:
    for move in trace:
        w = apply_move(w, move)
    return w


def side_condition_holds(w: BraidWord, generator: int) -> bool:
    return generator == w.p - 1 or w.count(generator) >= 3


@dataclass
class _SquareSearch:
    """Mutable rewriting state shared by the square search and the side condition fixup."""

    word: BraidWord
    trace: List[TraceMove] = field(default_factory=list)

    def apply(self, rule: MoveRule, position: Optional[int] = None) -> None:
        move = TraceMove(rule, position)
        self.word = apply_move(self.word, move)
        self.trace.append(move)

    def letter(self, idx: int) -> int:
        return self.word.letters[idx]

    def destabilize_in_place(self) -> None:
        # rotate the lone top letter to the tail, drop it, rotate the rest back into place
        length = self.word.length
        q = self.word.positions(self.word.p - 1)[0]
        if q != length - 1:
            self.apply(MoveRule.ROTATE, q + 1)
        self.apply(MoveRule.DESTABILIZE)
        back = length - q - 1
        if 0 < back < length - 1:
            self.apply(MoveRule.ROTATE, back)

    def close_pair(self, a: int, b: int, g: int) -> Tuple[int, int]:
        while a + 1 < b and abs(abs(self.letter(a + 1)) - g) > 1:
            self.apply(MoveRule.COMMUTE, a)
            a += 1
        while b - 1 > a and abs(abs(self.letter(b - 1)) - g) > 1:
            self.apply(MoveRule.COMMUTE, b - 1)
            b -= 1
        return a, b

    def resolve_window(self, lo: int, hi: int, g: int) -> Optional[int]:
        """Works on letters[lo:hi], all of which are <= g. Returns a square position or
        None once at most one sigma_g is left in the window."""
        while True:
            occurrences = [idx for idx in range(lo, hi) if self.letter(idx) == g]
            if len(occurrences) < 2:
                return None
            a, b = self.close_pair(occurrences[0], occurrences[1], g)
            if b == a + 1:
                LOGGER.debug(f"Adjacent pair of generator {g} at {a}")
                return a
            lower = sum(1 for idx in range(a + 1, b) if self.letter(idx) == g - 1)
            if lower == 1:
                LOGGER.debug(f"Single generator {g - 1} between the pair at {a}, applying the braid relation")
                self.apply(MoveRule.YANG_BAXTER, a)
                continue
            LOGGER.debug(f"{lower} letters {g - 1} between the pair at {a}..{b}, descending")
            found = self.resolve_window(a + 1, b, g - 1)
            if found is not None:
                return found

    def search_from(self, start: int, floor: int) -> Optional[int]:
        """Square search on the tail letters[start:] using generators floor..p-1."""
        while self.word.p - 1 >= floor:
            g = self.word.p - 1
            count = sum(1 for idx in range(start, self.word.length) if self.letter(idx) == g)
            if count == 0:
                self.apply(MoveRule.TRIM)
            elif count == 1:
                self.destabilize_in_place()
            else:
                found = self.resolve_window(start, self.word.length, g)
                if found is not None:
                    return found
        return None

    def partition_around(self, i: int) -> int:
        """With the word starting sigma_i^2, commutes the rest into letters < i then letters > i.
        Returns the index where the upper part begins."""
        swapped = True
        while swapped:
            swapped = False
            for idx in range(2, self.word.length - 1):
                if self.letter(idx) > i and self.letter(idx + 1) < i:
                    self.apply(MoveRule.COMMUTE, idx)
                    swapped = True
        return 2 + sum(1 for k in self.word.letters[2:] if k < i)

    def fix_side_condition(self, pos: int) -> SquareWitness:
        while not side_condition_holds(self.word, self.letter(pos)):
            i = self.letter(pos)
            if pos:
                self.apply(MoveRule.ROTATE, pos)
            start = self.partition_around(i)
            found = self.search_from(start, floor=i + 1)
            pos = 0 if found is None else found
        return self.witness(pos)

    def witness(self, pos: int) -> SquareWitness:
        return SquareWitness(word=self.word, position=pos, generator=self.letter(pos), trace=tuple(self.trace))


@logged_method
def find_square(w: BraidWord) -> SquareWitness | UnlinkResult:
    if not is_strictly_positive(w):
        raise ScopeError(f"Square search needs a strictly positive word, received {w}")
    search = _SquareSearch(word=w)
    pos = search.search_from(0, floor=1)
    if pos is None:
        LOGGER.debug(f"{w} destabilizes to the empty word")
        return UnlinkResult(word=search.word, trace=tuple(search.trace), components=closure_components(w))
    return search.fix_side_condition(pos)


@logged_method
def ensure_side_condition(w: BraidWord, pos: int) -> SquareWitness:
    if not is_strictly_positive(w):
        raise MoveError(f"Side condition fixup needs a strictly positive word, received {w}")
    if not 0 <= pos < w.length - 1 or w.letters[pos] != w.letters[pos + 1]:
        raise MoveError(f"No adjacent square at position {pos} of {w}")
    i = w.letters[pos]
    if w.count(i) != 2 or i >= w.p - 1:
        raise MoveError(f"Generator {i} of {w} does not need the side condition fixup")
    return _SquareSearch(word=w).fix_side_condition(pos)
