import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Tuple

from errors import BraidWordError, MoveError, ScopeError
from helpers import logged_method

LOGGER = logging.getLogger(__name__)

WORD_SEPARATORS = re.compile(r"[\s,]+")


@dataclass(frozen=True)
class BraidWord:
    """A braid word in B_n[p].

    Letters are 1-based signed generator indices: k > 0 is sigma_k, k < 0 is its inverse.
    Only the first p strands are braided; strands p+1..n are split unknots.
    """

    letters: Tuple[int, ...]
    n: int
    p: int = field(default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.p is None:
            object.__setattr__(self, "p", self.n)
        if self.n < 1:
            raise BraidWordError(f"Strand count must be positive, received n={self.n}")
        if not 1 <= self.p <= self.n:
            raise BraidWordError(f"Braided prefix must satisfy 1 <= p <= n, received p={self.p}, n={self.n}")
        for k in self.letters:
            if k == 0:
                raise BraidWordError("Generator index 0 is not a braid generator")
            if abs(k) > self.p - 1:
                raise BraidWordError(f"Letter {k} does not lie in B_{self.n}[{self.p}]")

    @property
    def length(self) -> int:
        return len(self.letters)

    def count(self, generator: int) -> int:
        return sum(1 for k in self.letters if abs(k) == generator)

    def positions(self, generator: int) -> List[int]:
        return [idx for idx, k in enumerate(self.letters) if abs(k) == generator]

    def with_letters(self, letters, n: int = None, p: int = None) -> "BraidWord":
        return BraidWord(tuple(letters), n=self.n if n is None else n, p=self.p if p is None else p)

    def __str__(self) -> str:
        return f"[{word_text(self)}] in B_{self.n}[{self.p}]"


@dataclass(frozen=True)
class Permutation:
    """Permutation of strands, images[s - 1] is the final position of the strand starting at s."""

    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise BraidWordError(f"Not a bijection on 1..{len(self.images)}: {self.images}")

    def cycles(self) -> List[Tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, len(self.images) + 1):
            if start in seen:
                continue
            cycle = []
            curr = start
            while curr not in seen:
                seen.add(curr)
                cycle.append(curr)
                curr = self.images[curr - 1]
            out.append(tuple(cycle))
        return out


@logged_method
def parse_word(text: str, strands: int = None) -> BraidWord:
    tokens = [x for x in WORD_SEPARATORS.split(text.strip()) if x]
    letters = []
    for token in tokens:
        try:
            value = int(token)
        except ValueError:
            raise BraidWordError(f"Cannot read '{token}' as a generator index")
        if value == 0:
            raise BraidWordError("Generator index 0 is not a braid generator")
        letters.append(value)
    widest = max((abs(x) for x in letters), default=0)
    if strands is None:
        n = widest + 1
    else:
        if strands < 1:
            raise BraidWordError(f"Strand count must be positive, received {strands}")
        if widest >= strands:
            raise BraidWordError(f"Generator {widest} needs at least {widest + 1} strands, received {strands}")
        n = strands
    LOGGER.debug(f"Parsed {len(letters)} letters on {n} strands")
    return BraidWord(tuple(letters), n=n, p=n)


def word_text(w: BraidWord) -> str:
    return " ".join(str(k) for k in w.letters)


@logged_method
def free_reduce(w: BraidWord) -> BraidWord:
    stack = []
    for k in w.letters:
        if stack and stack[-1] == -k:
            stack.pop()
        else:
            stack.append(k)
    return w.with_letters(stack)


@logged_method
def commute_step(w: BraidWord, pos: int) -> BraidWord:
    if not 0 <= pos < w.length - 1:
        raise MoveError(f"Commutation needs two letters at {pos}, word has length {w.length}")
    a, b = w.letters[pos], w.letters[pos + 1]
    if abs(abs(a) - abs(b)) <= 1:
        raise MoveError(f"Letters {a} and {b} at {pos} do not commute")
    letters = list(w.letters)
    letters[pos], letters[pos + 1] = b, a
    return w.with_letters(letters)


@logged_method
def yang_baxter_step(w: BraidWord, pos: int) -> BraidWord:
    if not 0 <= pos < w.length - 2:
        raise MoveError(f"Braid relation needs three letters at {pos}, word has length {w.length}")
    a, b, c = w.letters[pos : pos + 3]
    same_sign = (a > 0 and b > 0 and c > 0) or (a < 0 and b < 0 and c < 0)
    if a != c or abs(abs(a) - abs(b)) != 1 or not same_sign:
        raise MoveError(f"Segment ({a}, {b}, {c}) at {pos} is not of the form (i, i±1, i)")
    letters = list(w.letters)
    letters[pos : pos + 3] = [b, a, b]
    return w.with_letters(letters)


@logged_method
def cyclic_rotate(w: BraidWord, k: int) -> BraidWord:
    if w.length == 0:
        return w
    k %= w.length
    return w.with_letters(w.letters[k:] + w.letters[:k])


@logged_method
def destabilize(w: BraidWord) -> BraidWord:
    """Markov destabilization of the lone top generator sigma_{p-1}.

    The letter is conjugated to the tail and removed. Both n and p drop by one,
    which keeps the closure unchanged whether or not split strands follow the prefix.
    """
    top = w.p - 1
    if top < 1:
        raise MoveError("B_n[1] has no generator to destabilize")
    found = w.positions(top)
    if not found:
        raise MoveError(f"Generator {top} is absent, trim the prefix instead")
    if len(found) > 1:
        raise MoveError(f"Generator {top} occurs {len(found)} times, destabilization needs exactly one")
    rotated = cyclic_rotate(w, found[0] + 1)
    LOGGER.debug(f"Destabilizing {w} at position {found[0]}")
    return BraidWord(rotated.letters[:-1], n=w.n - 1, p=w.p - 1)


@logged_method
def trim_prefix(w: BraidWord) -> BraidWord:
    p = w.p
    while p > 1 and w.count(p - 1) == 0:
        p -= 1
    if p == w.p:
        return w
    return w.with_letters(w.letters, p=p)


@logged_method
def markov_reduce(w: BraidWord) -> BraidWord:
    while w.p > 1:
        occurrences = w.count(w.p - 1)
        if occurrences == 0:
            w = trim_prefix(w)
        elif occurrences == 1:
            w = destabilize(w)
        else:
            break
    return w


@logged_method
def insert_cancelling_pair(w: BraidWord, pos: int, k: int) -> BraidWord:
    if not 0 <= pos <= w.length:
        raise MoveError(f"Insertion point {pos} outside word of length {w.length}")
    if k == 0 or abs(k) > w.p - 1:
        raise MoveError(f"Generator {k} does not lie in B_{w.n}[{w.p}]")
    letters = list(w.letters)
    letters[pos:pos] = [k, -k]
    return w.with_letters(letters)


@logged_method
def mirror(w: BraidWord) -> BraidWord:
    return w.with_letters([-k for k in w.letters])


@logged_method
def is_strictly_positive(w: BraidWord) -> bool:
    if any(k < 0 for k in w.letters):
        return False
    present = set(w.letters)
    return all(g in present for g in range(1, w.p))


@logged_method
def complexity(w: BraidWord) -> int:
    if not is_strictly_positive(w):
        raise ScopeError(f"Complexity is defined for strictly positive words only, received {w}")
    return w.length - w.p + 1


@logged_method
def closure_permutation(w: BraidWord) -> Permutation:
    arrangement = list(range(1, w.n + 1))
    for k in w.letters:
        g = abs(k)
        arrangement[g - 1], arrangement[g] = arrangement[g], arrangement[g - 1]
    images = [0] * w.n
    for position, strand in enumerate(arrangement, start=1):
        images[strand - 1] = position
    return Permutation(tuple(images))


@logged_method
def closure_components(w: BraidWord) -> int:
    return len(closure_permutation(w).cycles())


@logged_method
def is_unlink_leaf(w: BraidWord) -> bool:
    return is_strictly_positive(w) and w.length - w.p + 1 == 0


@logged_method
def split_factors(w: BraidWord) -> List[BraidWord]:
    """Splits a positive word into strictly positive words, one per non-split block of strands.

    Strands that no generator touches come back as empty words on one strand.
    """
    if any(k < 0 for k in w.letters):
        raise ScopeError(f"Only positive words split into strictly positive factors, received {w}")
    present = Counter(w.letters)
    factors = []
    start = 1
    while start <= w.n:
        end = start
        while end < w.n and present[end] > 0:
            end += 1
        letters = [k - start + 1 for k in w.letters if start <= k < end]
        factors.append(BraidWord(tuple(letters), n=end - start + 1))
        start = end + 1
    LOGGER.debug(f"Split {w} into {len(factors)} factors")
    return factors
