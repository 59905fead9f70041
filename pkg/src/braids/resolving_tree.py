import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Set, Tuple

from braids.braid_core import (
    BraidWord,
    closure_components,
    complexity,
    is_strictly_positive,
    is_unlink_leaf,
    markov_reduce,
)
from braids.square_finder import TraceMove, UnlinkResult, find_square
from errors import InvariantViolation, MoveError, ScopeError, SearchExhausted
from helpers import logged_method, timed_method

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class TreeNode:
    """Resolving tree node. Internal nodes carry the rewritten word whose square at
    `crossing` is changed (left child) and resolved (right child)."""

    word: BraidWord
    chi: int
    crossing: Optional[int] = None
    change: Optional["TreeNode"] = None
    resolve: Optional["TreeNode"] = None
    components: Optional[int] = None
    trace: Tuple[TraceMove, ...] = field(default=(), repr=False)

    @property
    def is_leaf(self) -> bool:
        return self.change is None and self.resolve is None


def _check_square(w: BraidWord, pos: int) -> None:
    if not 0 <= pos < w.length - 1 or w.letters[pos] != w.letters[pos + 1] or w.letters[pos] < 0:
        raise MoveError(f"No positive adjacent square at position {pos} of {w}")


@logged_method
def child_change(w: BraidWord, pos: int) -> BraidWord:
    _check_square(w, pos)
    letters = w.letters[:pos] + w.letters[pos + 2 :]
    return markov_reduce(w.with_letters(letters))


@logged_method
def child_resolve(w: BraidWord, pos: int) -> BraidWord:
    _check_square(w, pos)
    letters = w.letters[:pos] + w.letters[pos + 1 :]
    return markov_reduce(w.with_letters(letters))


@logged_method
def build_tree(w: BraidWord) -> TreeNode:
    if not is_strictly_positive(w):
        raise ScopeError(f"Resolving trees are built for strictly positive words, received {w}")
    if is_unlink_leaf(w):
        return TreeNode(word=w, chi=0, components=closure_components(w))
    found = find_square(w)
    if isinstance(found, UnlinkResult):
        raise InvariantViolation(f"{w} has positive complexity but destabilized to an unlink")
    node_word = found.word
    chi = complexity(node_word)
    change = build_tree(child_change(node_word, found.position))
    resolve = build_tree(child_resolve(node_word, found.position))
    if max(change.chi, resolve.chi) > chi - 1:
        raise InvariantViolation(f"Complexity did not drop below {chi} under {node_word}")
    return TreeNode(
        word=node_word,
        chi=chi,
        crossing=found.position,
        change=change,
        resolve=resolve,
        trace=found.trace,
    )


def iter_nodes(t: TreeNode, depth: int = 0) -> Iterator[Tuple[TreeNode, int]]:
    yield t, depth
    if t.change is not None:
        yield from iter_nodes(t.change, depth + 1)
    if t.resolve is not None:
        yield from iter_nodes(t.resolve, depth + 1)


@logged_method
def tree_depth(t: TreeNode) -> int:
    return max(depth for _, depth in iter_nodes(t))


def count_nodes(t: TreeNode) -> int:
    return sum(1 for _ in iter_nodes(t))


def leaves(t: TreeNode) -> List[TreeNode]:
    return [node for node, _ in iter_nodes(t) if node.is_leaf]


@logged_method
def depth_formula(w: BraidWord) -> int:
    if not is_strictly_positive(w) or w.p != w.n:
        raise ScopeError(f"The depth formula covers strictly positive words in B_n, received {w}")
    return w.length - w.n + 1


# Brute force search. Words are plain (letters, n, p) tuples here, the BraidWord
# validation cost is too high for the orbit enumeration.
Key = Tuple[Tuple[int, ...], int, int]


def _cyclic_free_reduce(letters: Tuple[int, ...]) -> Tuple[int, ...]:
    stack: List[int] = []
    for k in letters:
        if stack and stack[-1] == -k:
            stack.pop()
        else:
            stack.append(k)
    lo, hi = 0, len(stack)
    while hi - lo >= 2 and stack[lo] == -stack[hi - 1]:
        lo += 1
        hi -= 1
    return tuple(stack[lo:hi])


def _shrink(key: Key) -> Key:
    letters, n, p = key
    while True:
        letters = _cyclic_free_reduce(letters)
        if p == 1:
            return letters, n, p
        top = [idx for idx, k in enumerate(letters) if abs(k) == p - 1]
        if not top:
            p -= 1
        elif len(top) == 1:
            q = top[0]
            letters = letters[q + 1 :] + letters[:q]
            n, p = n - 1, p - 1
        else:
            return letters, n, p


def _relation_moves(letters: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    size = len(letters)
    for k in range(1, size):
        yield letters[k:] + letters[:k]
    for idx in range(size - 1):
        a, b = letters[idx], letters[idx + 1]
        if abs(abs(a) - abs(b)) > 1:
            yield letters[:idx] + (b, a) + letters[idx + 2 :]
    for idx in range(size - 2):
        a, b, c = letters[idx : idx + 3]
        if abs(abs(a) - abs(b)) != 1 or abs(a) != abs(c):
            continue
        if a == c and (a > 0) == (b > 0):
            yield letters[:idx] + (b, a, b) + letters[idx + 3 :]
        elif a == -c:
            # s_a^e s_b^d s_a^-e = s_b^-e s_a^d s_b^e
            e = 1 if a > 0 else -1
            d = 1 if b > 0 else -1
            ga, gb = abs(a), abs(b)
            yield letters[:idx] + (-e * gb, d * ga, e * gb) + letters[idx + 3 :]


@dataclass
class _DepthSearch:
    orbit_limit: int
    canon: Dict[Key, Key] = field(default_factory=dict)
    orbits: Dict[Key, List[Key]] = field(default_factory=dict)
    children: Dict[Key, Set[Tuple[Key, Key]]] = field(default_factory=dict)
    solved_at: Dict[Key, int] = field(default_factory=dict)
    failed_at: Dict[Key, int] = field(default_factory=dict)

    def canonical(self, key: Key) -> Key:
        if key in self.canon:
            return self.canon[key]
        current = _shrink(key)
        while True:
            seen = {current[0]}
            queue = deque([current[0]])
            restart = None
            while queue and restart is None and len(seen) < self.orbit_limit:
                for moved in _relation_moves(queue.popleft()):
                    if moved in seen:
                        continue
                    shrunk = _shrink((moved, current[1], current[2]))
                    if shrunk != (moved, current[1], current[2]):
                        restart = shrunk
                        break
                    seen.add(moved)
                    queue.append(moved)
            if restart is None:
                break
            current = restart
        _, n, p = current
        representative = (min(seen, key=lambda x: (len(x), x)), n, p)
        self.orbits[representative] = [(x, n, p) for x in sorted(seen)]
        self.canon[key] = representative
        for member in seen:
            self.canon[(member, n, p)] = representative
        return representative

    def is_unlink(self, key: Key) -> bool:
        return len(key[0]) == 0

    def child_pairs(self, key: Key) -> Set[Tuple[Key, Key]]:
        if key not in self.children:
            pairs = set()
            for letters, n, p in self.orbits[key]:
                for q in range(len(letters)):
                    flipped = letters[:q] + (-letters[q],) + letters[q + 1 :]
                    removed = letters[:q] + letters[q + 1 :]
                    pairs.add((self.canonical((flipped, n, p)), self.canonical((removed, n, p))))
            self.children[key] = pairs
        return self.children[key]

    def solvable(self, key: Key, budget: int) -> bool:
        if self.is_unlink(key) or self.solved_at.get(key, budget + 1) <= budget:
            return True
        if budget == 0 or self.failed_at.get(key, -1) >= budget:
            return False
        for change, resolve in self.child_pairs(key):
            if self.solvable(change, budget - 1) and self.solvable(resolve, budget - 1):
                self.solved_at[key] = budget
                return True
        self.failed_at[key] = budget
        return False


@timed_method
@logged_method
def brute_force_min_depth(
    w: BraidWord, depth_budget: int, max_word_length: int = 8, orbit_limit: int = 4000
) -> int:
    """Iterative deepening over resolving trees of braid-word diagrams.

    Every crossing of every word reachable by rotations and braid relations is tried,
    children are reduced by free cancellation and destabilization. The result is an
    upper bound on the depth of the closure.
    """
    if w.length > max_word_length:
        raise ScopeError(f"Brute force search is limited to {max_word_length} letters, received {w.length}")
    search = _DepthSearch(orbit_limit=orbit_limit)
    root = search.canonical((w.letters, w.n, w.p))
    for budget in range(depth_budget + 1):
        LOGGER.debug(f"Searching resolving trees of depth {budget} for {w}")
        if search.solvable(root, budget):
            return budget
    raise SearchExhausted(f"No resolving tree of depth <= {depth_budget} found for {w}")
