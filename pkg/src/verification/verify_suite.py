import logging
import os
import random
import timeit
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import pandas as pd

from braids.braid_core import (
    BraidWord,
    closure_components,
    commute_step,
    cyclic_rotate,
    destabilize,
    free_reduce,
    insert_cancelling_pair,
    is_strictly_positive,
    yang_baxter_step,
)
from braids.resolving_tree import brute_force_min_depth, build_tree, depth_formula, iter_nodes, tree_depth
from errors import BraidCalculusError, InvariantViolation
from helpers import ensure_path, logged_method, timed_method
from invariants.oracle import alexander_of_closure
from invariants.skein_poly import breadth_inequality_violations, equal_up_to_unit, subtree_polynomials
from invariants.state_sum import alexander_state_sum, build_diagram, enumerate_states, extremal_states
from prometheus_processing.verification_metrics import VERIFY_METRICS
from runtime_monitor import MemoryTicker

LOGGER = logging.getLogger(__name__)


class VerifyColumnNames:
    word = "Word"
    strands = "Strands"
    length = "Length"
    formula = "Formula"
    tree_depth = "TreeDepth"
    chi_drops = "ChiDropsOK"
    leaves = "LeavesOK"
    breadth_skein = "BreadthSkein"
    breadth_state = "BreadthStateSum"
    breadth_burau = "BreadthBurau"
    units_agree = "UnitsAgree"
    child_inequality = "ChildBreadthViolations"
    root_inequality = "RootBreadthOK"
    extremal = "ExtremalOK"
    moves = "Moves"
    burau_invariant = "BurauInvariant"
    components_invariant = "ComponentsInvariant"
    brute_force = "BruteForce"
    error = "Error"
    passed = "Passed"


VERIFY_COLUMNS = VerifyColumnNames()

# Tiny words whose minimal depth the exhaustive search settles.
CERTIFICATION_WORDS = (
    BraidWord((1, 1), n=2),
    BraidWord((1, 1, 1), n=2),
    BraidWord((1, 1, 1, 1), n=2),
    BraidWord((1, 2, 1, 2), n=3),
)


@dataclass(kw_only=True)
class VerifySettings:
    sample_count: int = field(default=200)
    min_strands: int = field(default=2)
    max_strands: int = field(default=5)
    max_length: int = field(default=14)
    battery_count: int = field(default=100)
    moves_per_word: int = field(default=5)
    memory_tick_seconds: int = field(default=5)
    report_csv: Optional[str] = field(default=None)
    metrics_file: Optional[str] = field(default=None)
    brute_force_budget: int = field(default=6)
    max_word_length: int = field(default=8)
    orbit_limit: int = field(default=4000)


@dataclass
class VerifyReport:
    words: pd.DataFrame
    battery: pd.DataFrame
    certification: pd.DataFrame
    elapsed_seconds: float = field(default=0.0)

    @property
    def failed(self) -> int:
        return sum(int((~frame[VERIFY_COLUMNS.passed]).sum()) for frame in self.frames if not frame.empty)

    @property
    def passed(self) -> int:
        return sum(int(frame[VERIFY_COLUMNS.passed].sum()) for frame in self.frames if not frame.empty)

    @property
    def frames(self) -> List[pd.DataFrame]:
        return [self.words, self.battery, self.certification]

    def summary(self) -> str:
        return (
            f"words {len(self.words)}, battery {len(self.battery)}, certified {len(self.certification)}: "
            f"{self.passed} passed, {self.failed} failed in {self.elapsed_seconds:.1f}s"
        )


def _random_strictly_positive(rng: random.Random, min_strands: int, max_strands: int, max_length: int) -> BraidWord:
    n = rng.randint(min_strands, max_strands)
    length = rng.randint(n, max(n, max_length))
    while True:
        letters = tuple(rng.randint(1, n - 1) for _ in range(length))
        candidate = BraidWord(letters, n=n)
        if is_strictly_positive(candidate):
            return candidate


@logged_method
def sample_words(seed: int, count: int, min_strands: int = 2, max_strands: int = 5, max_length: int = 14) -> List[BraidWord]:
    if min_strands < 2:
        raise ValueError(f"Random words need at least 2 strands, received {min_strands}")
    rng = random.Random(seed)
    return [_random_strictly_positive(rng, min_strands, max_strands, max_length) for _ in range(count)]


@timed_method
@logged_method
def check_word(w: BraidWord) -> Dict[str, object]:
    row: Dict[str, object] = {
        VERIFY_COLUMNS.word: " ".join(str(k) for k in w.letters),
        VERIFY_COLUMNS.strands: w.n,
        VERIFY_COLUMNS.length: w.length,
        VERIFY_COLUMNS.error: "",
    }
    try:
        formula = depth_formula(w)
        tree = build_tree(w)
        depth = tree_depth(tree)
        internal = [node for node, _ in iter_nodes(tree) if not node.is_leaf]
        chi_ok = all(max(node.change.chi, node.resolve.chi) <= node.chi - 1 for node in internal)
        leaves_ok = all(node.chi == 0 and node.components >= 1 for node, _ in iter_nodes(tree) if node.is_leaf)

        skein = subtree_polynomials(tree)[id(tree)]
        diagram = build_diagram(w)
        states = enumerate_states(diagram)
        state_total = alexander_state_sum(diagram, states)
        burau = alexander_of_closure(w)
        try:
            extremal_states(diagram, states)
            extremal_ok = True
        except InvariantViolation as exc:
            LOGGER.error(f"Extremal states of {w}: {exc}")
            row[VERIFY_COLUMNS.error] = f"{type(exc).__name__}: {exc}"
            extremal_ok = False

        row.update(
            {
                VERIFY_COLUMNS.formula: formula,
                VERIFY_COLUMNS.tree_depth: depth,
                VERIFY_COLUMNS.chi_drops: chi_ok,
                VERIFY_COLUMNS.leaves: leaves_ok,
                VERIFY_COLUMNS.breadth_skein: float(skein.breadth()),
                VERIFY_COLUMNS.breadth_state: float(state_total.breadth()),
                VERIFY_COLUMNS.breadth_burau: float(burau.breadth()),
                VERIFY_COLUMNS.units_agree: equal_up_to_unit(skein, state_total) and equal_up_to_unit(skein, burau),
                VERIFY_COLUMNS.child_inequality: breadth_inequality_violations(tree),
                VERIFY_COLUMNS.root_inequality: skein.breadth() <= depth,
                VERIFY_COLUMNS.extremal: extremal_ok,
            }
        )
        row[VERIFY_COLUMNS.passed] = bool(
            depth == formula
            and chi_ok
            and leaves_ok
            and row[VERIFY_COLUMNS.breadth_skein] == formula
            and row[VERIFY_COLUMNS.breadth_state] == formula
            and row[VERIFY_COLUMNS.breadth_burau] == formula
            and row[VERIFY_COLUMNS.units_agree]
            and row[VERIFY_COLUMNS.child_inequality] == 0
            and row[VERIFY_COLUMNS.root_inequality]
            and extremal_ok
        )
    except BraidCalculusError as exc:
        LOGGER.error(f"Checks failed on {w}: {exc}")
        row[VERIFY_COLUMNS.error] = f"{type(exc).__name__}: {exc}"
        row[VERIFY_COLUMNS.passed] = False
    return row


def _random_signed_word(rng: random.Random, min_strands: int, max_strands: int, max_length: int) -> BraidWord:
    n = rng.randint(min_strands, max_strands)
    length = rng.randint(n - 1, max(n - 1, max_length))
    while True:
        letters = tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length))
        if {abs(k) for k in letters} == set(range(1, n)):
            return BraidWord(letters, n=n)


def _legal_moves(w: BraidWord, rng: random.Random) -> List[Tuple[str, Callable[[], BraidWord]]]:
    moves: List[Tuple[str, Callable[[], BraidWord]]] = []
    if free_reduce(w).letters != w.letters:
        moves.append(("free_reduce", lambda: free_reduce(w)))
    if w.p > 1:
        pos = rng.randint(0, w.length)
        k = rng.choice((1, -1)) * rng.randint(1, w.p - 1)
        moves.append((f"insert_pair@{pos}", lambda pos=pos, k=k: insert_cancelling_pair(w, pos, k)))
    for pos in range(w.length - 1):
        a, b = w.letters[pos], w.letters[pos + 1]
        if abs(abs(a) - abs(b)) > 1:
            moves.append((f"commute@{pos}", lambda pos=pos: commute_step(w, pos)))
    for pos in range(w.length - 2):
        a, b, c = w.letters[pos : pos + 3]
        if a == c and abs(abs(a) - abs(b)) == 1 and (a > 0) == (b > 0):
            moves.append((f"yang_baxter@{pos}", lambda pos=pos: yang_baxter_step(w, pos)))
    if w.length > 1:
        k = rng.randint(1, w.length - 1)
        moves.append((f"rotate{k}", lambda k=k: cyclic_rotate(w, k)))
    if w.p > 1 and w.count(w.p - 1) == 1:
        moves.append(("destabilize", lambda: destabilize(w)))
    return moves


@timed_method
@logged_method
def closure_battery(
    seed: int, count: int, moves: int, min_strands: int = 2, max_strands: int = 5, max_length: int = 14
) -> List[Dict[str, object]]:
    """Random signed words pushed through random closure-preserving moves."""
    rng = random.Random(seed)
    rows = []
    for _ in range(count):
        start = _random_signed_word(rng, min_strands, max_strands, max_length)
        current = start
        applied = []
        for _ in range(moves):
            options = _legal_moves(current, rng)
            if not options:
                break
            name, move = rng.choice(options)
            current = move()
            applied.append(name)
        burau_same = equal_up_to_unit(alexander_of_closure(start), alexander_of_closure(current))
        components_same = closure_components(start) == closure_components(current)
        rows.append(
            {
                VERIFY_COLUMNS.word: " ".join(str(k) for k in start.letters),
                VERIFY_COLUMNS.strands: start.n,
                VERIFY_COLUMNS.moves: " ".join(applied),
                VERIFY_COLUMNS.burau_invariant: burau_same,
                VERIFY_COLUMNS.components_invariant: components_same,
                VERIFY_COLUMNS.passed: burau_same and components_same,
            }
        )
        VERIFY_METRICS.battery_runs.inc()
    return rows


@logged_method
def certify_small_words(settings: VerifySettings) -> List[Dict[str, object]]:
    rows = []
    for w in CERTIFICATION_WORDS:
        formula = depth_formula(w)
        try:
            found = brute_force_min_depth(
                w, settings.brute_force_budget, max_word_length=settings.max_word_length, orbit_limit=settings.orbit_limit
            )
        except BraidCalculusError as exc:
            LOGGER.error(f"Brute force search failed on {w}: {exc}")
            found = None
        rows.append(
            {
                VERIFY_COLUMNS.word: " ".join(str(k) for k in w.letters),
                VERIFY_COLUMNS.strands: w.n,
                VERIFY_COLUMNS.formula: formula,
                VERIFY_COLUMNS.brute_force: found,
                VERIFY_COLUMNS.passed: found == formula,
            }
        )
    return rows


@logged_method
def run_suite(settings: VerifySettings, seed: int) -> VerifyReport:
    LOGGER.info(f"Starting verification run with seed {seed}")
    start = timeit.default_timer()
    with MemoryTicker(tick_seconds=settings.memory_tick_seconds):
        word_rows = []
        for w in sample_words(seed, settings.sample_count, settings.min_strands, settings.max_strands, settings.max_length):
            row = check_word(w)
            VERIFY_METRICS.words_checked.inc()
            if not row[VERIFY_COLUMNS.passed]:
                VERIFY_METRICS.record_failures("word", 1)
            word_rows.append(row)
        battery_rows = closure_battery(
            seed,
            settings.battery_count,
            settings.moves_per_word,
            settings.min_strands,
            settings.max_strands,
            settings.max_length,
        )
        certification_rows = certify_small_words(settings)
    report = VerifyReport(
        words=pd.DataFrame.from_records(word_rows),
        battery=pd.DataFrame.from_records(battery_rows),
        certification=pd.DataFrame.from_records(certification_rows),
        elapsed_seconds=timeit.default_timer() - start,
    )
    if not report.battery.empty:
        VERIFY_METRICS.record_failures("battery", int((~report.battery[VERIFY_COLUMNS.passed]).sum()))
    if not report.certification.empty:
        VERIFY_METRICS.record_failures("certification", int((~report.certification[VERIFY_COLUMNS.passed]).sum()))
    VERIFY_METRICS.run_seconds.set(report.elapsed_seconds)
    if settings.report_csv:
        write_report_csv(report, settings.report_csv)
    if settings.metrics_file:
        VERIFY_METRICS.export(settings.metrics_file)
    LOGGER.info(f"Verification finished: {report.summary()}")
    return report


@logged_method
def write_report_csv(report: VerifyReport, path: str) -> None:
    ensure_path(os.path.dirname(path))
    combined = pd.concat(
        [
            report.words.assign(Section="words"),
            report.battery.assign(Section="battery"),
            report.certification.assign(Section="certification"),
        ],
        ignore_index=True,
    )
    combined.to_csv(path, index=False)
    LOGGER.info(f"Verification report written to {path}")
