import logging
from bisect import bisect_left
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from braids.braid_core import BraidWord, is_strictly_positive
from errors import InvariantViolation, ScopeError
from helpers import logged_method, timed_method
from invariants.skein_poly import HalfLaurent

LOGGER = logging.getLogger(__name__)


class Label(Enum):
    """Corner labels as (sign, power of t)."""

    BELOW = (-1, 1)
    ABOVE = (-1, 0)
    LEFT = (1, 1)
    RIGHT = (1, 0)

    @property
    def sign(self) -> int:
        return self.value[0]

    @property
    def exponent(self) -> int:
        return self.value[1]

    @property
    def text(self) -> str:
        return {Label.BELOW: "-t", Label.ABOVE: "-1", Label.LEFT: "t", Label.RIGHT: "1"}[self]


@dataclass(frozen=True, order=True)
class Region:
    """R_0 and R_n are the outer regions (ordinal 1); R_i^j sits between strands i and i+1."""

    column: int
    ordinal: int = 1
    outer: bool = field(default=False, compare=False)

    @property
    def name(self) -> str:
        if self.outer:
            return f"R_{self.column}"
        return f"R_{self.column}^{self.ordinal}"


@dataclass(frozen=True, order=True)
class Crossing:
    column: int
    ordinal: int
    position: int

    @property
    def name(self) -> str:
        return f"c_{self.column}^{self.ordinal}"


@dataclass(frozen=True)
class Corner:
    region: Region
    label: Label


@dataclass(frozen=True)
class ClosedBraidDiagram:
    word: BraidWord
    crossings: Tuple[Crossing, ...]
    regions: Tuple[Region, ...]
    corners: Dict[Crossing, Tuple[Corner, ...]]
    starred: frozenset

    @property
    def free_regions(self) -> Tuple[Region, ...]:
        return tuple(r for r in self.regions if r not in self.starred)

    def column(self, i: int) -> List[Crossing]:
        return [c for c in self.crossings if c.column == i]

    def crossing(self, i: int, j: int) -> Crossing:
        for c in self.crossings:
            if c.column == i and c.ordinal == j:
                return c
        raise KeyError(f"c_{i}^{j}")

    def corner(self, c: Crossing, label: Label) -> Corner:
        return next(x for x in self.corners[c] if x.label == label)


@dataclass(frozen=True)
class KauffmanState:
    """One corner per crossing, every free region used exactly once.

    sign includes the sign of the crossing-to-region permutation, so the states sum
    to the Alexander determinant.
    """

    assignment: Tuple[Tuple[Crossing, Corner], ...]
    sign: int
    exponent: int

    @property
    def weight_text(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}t^{self.exponent}"

    def matching(self) -> List[list]:
        return [[c.column, c.ordinal, corner.region.name] for c, corner in self.assignment]


def _containing_region(positions: List[int], column: int, height: int) -> Region:
    below = bisect_left(positions, height)
    if 0 < below < len(positions):
        return Region(column, below + 1)
    return Region(column, 1)


@logged_method
def build_diagram(w: BraidWord) -> ClosedBraidDiagram:
    if w.n < 2 or w.p != w.n or not is_strictly_positive(w):
        raise ScopeError(f"Closed braid diagrams need a strictly positive word in B_n with n >= 2, received {w}")
    n = w.n
    positions = {i: w.positions(i) for i in range(1, n)}
    crossings = []
    corners = {}
    for i in range(1, n):
        count = len(positions[i])
        for j, q in enumerate(positions[i], start=1):
            c = Crossing(i, j, q)
            left = Region(0, outer=True) if i == 1 else _containing_region(positions[i - 1], i - 1, q)
            right = Region(n, outer=True) if i == n - 1 else _containing_region(positions[i + 1], i + 1, q)
            corners[c] = (
                Corner(Region(i, j), Label.BELOW),
                Corner(Region(i, j % count + 1), Label.ABOVE),
                Corner(left, Label.LEFT),
                Corner(right, Label.RIGHT),
            )
            crossings.append(c)
    regions = [Region(0, outer=True)]
    regions += [Region(i, j) for i in range(1, n) for j in range(1, len(positions[i]) + 1)]
    regions.append(Region(n, outer=True))
    d = ClosedBraidDiagram(
        word=w,
        crossings=tuple(sorted(crossings)),
        regions=tuple(regions),
        corners=corners,
        starred=frozenset({Region(0, outer=True), Region(1, 1)}),
    )
    if len(d.regions) != w.length + 2 or len(d.free_regions) != len(d.crossings):
        raise InvariantViolation(f"Diagram of {w} has {len(d.regions)} regions for {w.length} crossings")
    LOGGER.debug(f"Diagram of {w}: {len(d.crossings)} crossings, {len(d.regions)} regions")
    return d


def _permutation_sign(images: List[int]) -> int:
    seen = [False] * len(images)
    transpositions = 0
    for start in range(len(images)):
        length = 0
        curr = start
        while not seen[curr]:
            seen[curr] = True
            curr = images[curr]
            length += 1
        if length:
            transpositions += length - 1
    return -1 if transpositions % 2 else 1


def _make_state(d: ClosedBraidDiagram, chosen: List[Corner]) -> KauffmanState:
    index = {r: k for k, r in enumerate(d.free_regions)}
    sign = _permutation_sign([index[corner.region] for corner in chosen])
    exponent = 0
    for corner in chosen:
        sign *= corner.label.sign
        exponent += corner.label.exponent
    return KauffmanState(assignment=tuple(zip(d.crossings, chosen)), sign=sign, exponent=exponent)


@timed_method
@logged_method
def enumerate_states(d: ClosedBraidDiagram) -> List[KauffmanState]:
    states: List[KauffmanState] = []
    used = set(d.starred)
    chosen: List[Corner] = []

    def extend(k: int) -> None:
        if k == len(d.crossings):
            states.append(_make_state(d, chosen))
            return
        for corner in d.corners[d.crossings[k]]:
            if corner.region in used:
                continue
            used.add(corner.region)
            chosen.append(corner)
            extend(k + 1)
            chosen.pop()
            used.discard(corner.region)

    extend(0)
    LOGGER.debug(f"{len(states)} states for {d.word}")
    return states


@logged_method
def alexander_state_sum(d: ClosedBraidDiagram, states: Optional[List[KauffmanState]] = None) -> HalfLaurent:
    total: Dict[int, int] = {}
    for s in enumerate_states(d) if states is None else states:
        total[s.exponent] = total.get(s.exponent, 0) + s.sign
    return HalfLaurent.from_integer_powers(total)


def _chain_state(d: ClosedBraidDiagram, start: Crossing, default: Label, next_in_chain) -> KauffmanState:
    chain = {}
    c = start
    while True:
        chain[c] = d.corner(c, Label.RIGHT)
        if c.column == d.word.n - 1:
            break
        c = next_in_chain(chain[c].region)
    chosen = [chain.get(c) or d.corner(c, default) for c in d.crossings]
    return _make_state(d, chosen)


@logged_method
def staircase_low_state(d: ClosedBraidDiagram) -> KauffmanState:
    """Weight +-1: a staircase of right corners from c_1^{n_1}, every other region taken from above."""

    def crossing_below(region: Region) -> Crossing:
        column = d.column(region.column)
        return column[region.ordinal - 2] if region.ordinal > 1 else column[-1]

    return _chain_state(d, d.column(1)[-1], Label.ABOVE, crossing_below)


@logged_method
def staircase_high_state(d: ClosedBraidDiagram) -> KauffmanState:
    """Weight +-t^(l-n+1): a staircase of right corners from c_1^1, every other crossing takes its lower region."""

    def crossing_above(region: Region) -> Crossing:
        return d.crossing(region.column, region.ordinal)

    return _chain_state(d, d.column(1)[0], Label.BELOW, crossing_above)


def full_t_columns(d: ClosedBraidDiagram, state: KauffmanState) -> List[int]:
    labels = {c: corner.label for c, corner in state.assignment}
    return [
        i
        for i in range(1, d.word.n)
        if all(labels[c] in (Label.BELOW, Label.LEFT) for c in d.column(i))
    ]


@logged_method
def extremal_states(
    d: ClosedBraidDiagram, states: Optional[List[KauffmanState]] = None
) -> Tuple[KauffmanState, KauffmanState]:
    states = enumerate_states(d) if states is None else states
    top = d.word.length - d.word.n + 1
    low = [s for s in states if s.exponent == 0]
    high = [s for s in states if s.exponent == top]
    if len(low) != 1 or len(high) != 1:
        raise InvariantViolation(f"{d.word}: {len(low)} states of weight +-1 and {len(high)} of weight +-t^{top}")
    outside = [s for s in states if not 0 <= s.exponent <= top]
    if outside:
        raise InvariantViolation(f"{d.word}: state weight {outside[0].weight_text} outside t^0..t^{top}")
    for s in states:
        columns = full_t_columns(d, s)
        if columns:
            raise InvariantViolation(f"{d.word}: state {s.weight_text} has t labels on all of column {columns[0]}")
    if low[0].assignment != staircase_low_state(d).assignment:
        raise InvariantViolation(f"{d.word}: the weight +-1 state is not the staircase construction")
    if high[0].assignment != staircase_high_state(d).assignment:
        raise InvariantViolation(f"{d.word}: the weight +-t^{top} state is not the staircase construction")
    return low[0], high[0]
