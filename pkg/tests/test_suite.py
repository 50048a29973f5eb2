import json

import pytest

from etanu.catalog import catalog_by_id
from etanu.suite import (
    EntryOutcome,
    jsonl_lines,
    load_pinned_fixtures,
    recheck_witness,
    run_suite,
    search_extremal,
    text_summary,
)

SMALL_SELECTION = ["trivial-c2-c3", "trivial-c4-c6", "nu-c2", "nu-s3"]


@pytest.fixture(scope="module")
def small_report():
    by_id = catalog_by_id()
    return run_suite([by_id[i] for i in SMALL_SELECTION])


class TestRunSuite:
    def test_small_selection_passes(self, small_report):
        assert small_report.fail_count() == 0
        assert small_report.exit_code() == 0
        assert [o.entry_id for o in small_report.outcomes] == SMALL_SELECTION

    def test_fixtures_match_shipped(self, small_report):
        fixtures = load_pinned_fixtures()
        assert fixtures, "shipped fixtures must not be empty"
        for outcome in small_report.outcomes:
            assert outcome.fixture_verdict == "match"

    def test_corrupted_fixture_fails_with_diff(self):
        by_id = catalog_by_id()
        fixtures = json.loads(json.dumps(load_pinned_fixtures()))
        fixtures["nu-c2"]["tensor_order"] = 999
        report = run_suite([by_id["nu-c2"]], fixtures=fixtures)
        outcome = report.outcomes[0]
        assert outcome.fixture_verdict == "mismatch"
        assert "tensor_order" in outcome.fixture_diff
        assert outcome.fixture_diff["tensor_order"]["pinned"] == 999
        assert report.exit_code() == 1

    def test_unpinned_fixture_only_fails_strict(self):
        by_id = catalog_by_id()
        report = run_suite([by_id["nu-c2"]], fixtures={})
        assert report.exit_code(strict=False) == 0
        assert report.exit_code(strict=True) == 1

    def test_limit_exceeded_entry_is_nonfatal_unless_strict(self):
        by_id = catalog_by_id()
        report = run_suite([by_id["nu-s3"]], fixtures={}, max_cosets=16)
        outcome = report.outcomes[0]
        assert outcome.status == "limit-exceeded"
        assert report.exit_code(strict=False) == 0
        assert report.exit_code(strict=True) == 3

    def test_empty_selection_rejected(self):
        with pytest.raises(ValueError):
            run_suite([])

    def test_parallel_matches_serial(self, small_report):
        by_id = catalog_by_id()
        parallel = run_suite([by_id[i] for i in SMALL_SELECTION], jobs=2)
        serial_lines = list(jsonl_lines(small_report))
        parallel_lines = list(jsonl_lines(parallel))
        assert serial_lines == parallel_lines


class TestEmission:
    def test_jsonl_parses_and_is_stable(self, small_report):
        lines = list(jsonl_lines(small_report))
        parsed = [json.loads(line) for line in lines]
        assert parsed[-1]["type"] == "summary"
        assert parsed[-1]["check_failures"] == 0
        assert lines == list(jsonl_lines(small_report))

    def test_jsonl_contains_reports_checks_fixtures(self, small_report):
        kinds = {json.loads(line)["type"] for line in jsonl_lines(small_report)}
        assert kinds == {"report", "check", "fixture", "summary"}

    def test_text_summary_lists_each_entry(self, small_report):
        text = text_summary(small_report)
        for entry_id in SMALL_SELECTION:
            assert entry_id in text
        assert "0 failing" in text


class TestSearchExtremal:
    def test_max_order_two_single_row(self):
        census = search_extremal(max_order=2)
        assert not census["partial"]
        assert census["per_m_max_derivative"] == {"1": 1}

    def test_zero_budget_partial_empty(self):
        census = search_extremal(max_order=3, budget=0)
        assert census["partial"] is True
        assert census["per_m_max_derivative"] == {}

    def test_max_order_four_census(self):
        census = search_extremal(max_order=4)
        assert not census["partial"]
        # the klein4 block contributes incompatible assignments
        assert census["incompatible_witnesses"]
        for witness in census["incompatible_witnesses"]:
            assert recheck_witness(witness)
        v4_row = next(
            row for row in census["pairs"] if row["G"] == "klein4" and row["H"] == "klein4"
        )
        assert v4_row == {
            "G": "klein4",
            "H": "klein4",
            "examined": 100,
            "compatible": 28,
            "incompatible": 72,
        }

    def test_trivial_pair_always_compatible(self):
        census = search_extremal(max_order=3)
        for row in census["pairs"]:
            assert row.get("compatible", 0) >= 1


class TestEntryOutcome:
    def test_failed_logic(self):
        ok = EntryOutcome("x", "ok")
        assert not ok.failed()
        limit = EntryOutcome("x", "limit-exceeded")
        assert not limit.failed(strict=False)
        assert limit.failed(strict=True)
        error = EntryOutcome("x", "error", detail="boom")
        assert error.failed()
