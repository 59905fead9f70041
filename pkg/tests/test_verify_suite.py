import os

import pytest

from braids.braid_core import BraidWord, is_strictly_positive
from errors import InvariantViolation
from verification import verify_suite
from verification.verify_suite import (
    VERIFY_COLUMNS,
    VerifySettings,
    certify_small_words,
    check_word,
    closure_battery,
    run_suite,
    sample_words,
)


def test_sampler_is_deterministic():
    first = sample_words(seed=11, count=20)
    assert first == sample_words(seed=11, count=20)
    assert first != sample_words(seed=12, count=20)
    for w in first:
        assert 2 <= w.n <= 5
        assert w.n <= w.length <= 14
        assert is_strictly_positive(w)


def test_sampler_rejects_single_strand():
    with pytest.raises(ValueError):
        sample_words(seed=0, count=1, min_strands=1)


def test_check_word_passes_on_the_four_strand_word():
    row = check_word(BraidWord((2, 1, 2, 3, 1, 3, 1, 2), n=4))
    assert row[VERIFY_COLUMNS.passed]
    assert row[VERIFY_COLUMNS.tree_depth] == 5
    assert row[VERIFY_COLUMNS.breadth_state] == 5.0
    assert row[VERIFY_COLUMNS.error] == ""
    assert row[VERIFY_COLUMNS.extremal] is True
    assert row[VERIFY_COLUMNS.child_inequality] == 0


@pytest.mark.parametrize("w", [BraidWord((1, 1, 1), n=2)] + sample_words(seed=7, count=10))
def test_check_word_passes_on_sampled_words(w):
    row = check_word(w)
    assert row[VERIFY_COLUMNS.passed], row


def test_extremal_failures_fail_the_row(monkeypatch):
    def broken(diagram, states):
        raise InvariantViolation("two states of weight +-1")

    monkeypatch.setattr(verify_suite, "extremal_states", broken)
    row = check_word(BraidWord((1, 1, 1), n=2))
    assert row[VERIFY_COLUMNS.extremal] is False
    assert not row[VERIFY_COLUMNS.passed]
    assert row[VERIFY_COLUMNS.error].startswith("InvariantViolation")


def test_check_word_reports_scope_errors():
    row = check_word(BraidWord((2, 2), n=3))
    assert not row[VERIFY_COLUMNS.passed]
    assert row[VERIFY_COLUMNS.error].startswith("ScopeError")


def test_closure_battery():
    rows = closure_battery(seed=3, count=15, moves=5)
    assert len(rows) == 15
    assert all(row[VERIFY_COLUMNS.passed] for row in rows)
    assert all(row[VERIFY_COLUMNS.moves] for row in rows)


def test_certification_rows():
    rows = certify_small_words(VerifySettings())
    assert [row[VERIFY_COLUMNS.brute_force] for row in rows] == [1, 2, 3, 2]
    assert all(row[VERIFY_COLUMNS.passed] for row in rows)


def test_small_suite_writes_report_and_metrics(tmp_path):
    settings = VerifySettings(
        sample_count=5,
        battery_count=5,
        memory_tick_seconds=1,
        report_csv=str(tmp_path / "out" / "report.csv"),
        metrics_file=str(tmp_path / "metrics" / "verify.prom"),
    )
    report = run_suite(settings, seed=5)
    assert report.failed == 0
    assert len(report.words) == 5
    assert os.path.exists(settings.report_csv)
    with open(settings.metrics_file) as handle:
        assert "braid_verify_words_checked_total" in handle.read()
