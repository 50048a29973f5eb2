"""Suite orchestration: realize catalog entries, run checks, emit reports.

Reports come in two shapes: a JSON-lines stream for machines (stable key
order, one object per check plus one report object per entry) and an aligned
text table for people.  Fixture comparison is exact: a pinned report must be
reproduced field for field, and any drift is a failure carrying the diff.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Sequence

from .actions import ActionPair, check_compatibility, enumerate_compatible_actions, derivative
from .catalog import CatalogEntry, default_catalog, search_group_list
from .checks import NOT_APPLICABLE, CheckResult, build_tensor_report, run_all_checks
from .errors import EnumerationLimitExceeded, EtanuError, SearchBudgetExceeded
from .eta import realize

OK = "ok"
LIMIT = "limit-exceeded"
ERROR = "error"

FIXTURES_RESOURCE = "fixtures.json"


@dataclass(frozen=True)
class EntryOutcome:
    entry_id: str
    status: str  # ok | limit-exceeded | error
    checks: tuple[CheckResult, ...] = ()
    report: dict | None = None
    fixture_verdict: str = "unpinned"  # match | mismatch | unpinned
    fixture_diff: dict | None = None
    detail: str | None = None

    def failed(self, strict: bool = False) -> bool:
        if self.status == ERROR:
            return True
        if self.status == LIMIT:
            return strict
        if any(r.verdict == "fail" for r in self.checks):
            return True
        if self.fixture_verdict == "mismatch":
            return True
        if strict and self.fixture_verdict == "unpinned":
            return True
        return False


@dataclass
class SuiteReport:
    outcomes: list[EntryOutcome] = field(default_factory=list)

    def fail_count(self, strict: bool = False) -> int:
        return sum(1 for o in self.outcomes if o.failed(strict))

    def exit_code(self, strict: bool = False) -> int:
        if any(o.status == LIMIT for o in self.outcomes) and strict:
            return 3
        return 1 if self.fail_count(strict) else 0


def load_pinned_fixtures() -> dict:
    """The fixtures shipped with the package; empty when none are pinned."""
    try:
        text = resources.files("etanu").joinpath(FIXTURES_RESOURCE).read_text()
    except FileNotFoundError:
        return {}
    return json.loads(text)


def compute_entry_report(pair: ActionPair, max_cosets: int | None = None) -> dict:
    """Realize one pair and produce its JSON-ready tensor report."""
    realization = realize(pair, max_cosets=max_cosets)
    results = run_all_checks(realization)
    report = build_tensor_report(realization, results)
    return {
        "report": report.to_json_dict(),
        "checks": [r.to_json_dict() for r in results],
    }


def _diff_reports(expected: dict, actual: dict) -> dict:
    diff = {}
    for key in sorted(set(expected) | set(actual)):
        if expected.get(key) != actual.get(key):
            diff[key] = {"pinned": expected.get(key), "actual": actual.get(key)}
    return diff


def evaluate_entry(
    entry: CatalogEntry,
    fixtures: dict | None = None,
    max_cosets: int | None = None,
) -> EntryOutcome:
    fixtures = fixtures if fixtures is not None else {}
    try:
        pair = entry.build()
        realization = realize(pair, max_cosets=max_cosets)
        results = run_all_checks(realization)
        report = build_tensor_report(realization, results).to_json_dict()
    except EnumerationLimitExceeded as exc:
        return EntryOutcome(entry.id, LIMIT, detail=str(exc))
    except EtanuError as exc:
        return EntryOutcome(entry.id, ERROR, detail=str(exc))
    pinned = fixtures.get(entry.id)
    if pinned is None:
        verdict, diff = "unpinned", None
    elif pinned == report:
        verdict, diff = "match", None
    else:
        verdict, diff = "mismatch", _diff_reports(pinned, report)
    return EntryOutcome(
        entry.id,
        OK,
        checks=tuple(results),
        report=report,
        fixture_verdict=verdict,
        fixture_diff=diff,
    )


def _evaluate_packed(args) -> EntryOutcome:
    entry, fixtures, max_cosets = args
    return evaluate_entry(entry, fixtures, max_cosets)


def run_suite(
    selection: Sequence[CatalogEntry] | None = None,
    fixtures: dict | None = None,
    jobs: int = 1,
    max_cosets: int | None = None,
) -> SuiteReport:
    """Evaluate every selected entry; ordering of outcomes follows selection."""
    entries = list(selection) if selection is not None else default_catalog()
    if not entries:
        raise ValueError("selection must not be empty")
    if fixtures is None:
        fixtures = load_pinned_fixtures()
    report = SuiteReport()
    if jobs > 1:
        work = [(entry, fixtures, max_cosets) for entry in entries]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            report.outcomes = list(pool.map(_evaluate_packed, work))
    else:
        for entry in entries:
            report.outcomes.append(evaluate_entry(entry, fixtures, max_cosets))
    return report


def jsonl_lines(report: SuiteReport) -> Iterable[str]:
    fails = 0
    for outcome in report.outcomes:
        if outcome.report is not None:
            yield json.dumps({"type": "report", "entry": outcome.entry_id, "report": outcome.report})
        else:
            yield json.dumps(
                {"type": "report", "entry": outcome.entry_id, "status": outcome.status, "detail": outcome.detail}
            )
        for check in outcome.checks:
            payload = check.to_json_dict()
            if check.verdict == "fail":
                fails += 1
            yield json.dumps({"type": "check", "entry": outcome.entry_id, **payload})
        yield json.dumps(
            {
                "type": "fixture",
                "entry": outcome.entry_id,
                "verdict": outcome.fixture_verdict,
                "diff": outcome.fixture_diff,
            }
        )
    yield json.dumps(
        {
            "type": "summary",
            "entries": len(report.outcomes),
            "check_failures": fails,
            "limit_exceeded": sum(1 for o in report.outcomes if o.status == LIMIT),
            "errors": sum(1 for o in report.outcomes if o.status == ERROR),
            "fixture_mismatches": sum(
                1 for o in report.outcomes if o.fixture_verdict == "mismatch"
            ),
        }
    )


def text_summary(report: SuiteReport, strict: bool = False) -> str:
    header = f"{'entry':26} {'status':15} {'m':>4} {'|T|':>5} {'n':>4} {'exp':>4} {'checks':>8} {'fixture':>9}"
    lines = [header, "-" * len(header)]
    for o in report.outcomes:
        if o.report is None:
            lines.append(f"{o.entry_id:26} {o.status:15} {'-':>4} {'-':>5} {'-':>4} {'-':>4} {'-':>8} {'-':>9}")
            continue
        rep = o.report
        applicable = [r for r in o.checks if r.verdict != NOT_APPLICABLE]
        passed = sum(1 for r in applicable if r.passed())
        lines.append(
            f"{o.entry_id:26} {o.status:15} {rep['m']:>4} {rep['tensor_order']:>5} "
            f"{rep['n']:>4} {rep['exponent']:>4} {passed:>3}/{len(applicable):<4} {o.fixture_verdict:>9}"
        )
    fails = report.fail_count(strict)
    lines.append("-" * len(header))
    lines.append(f"{len(report.outcomes)} entries, {fails} failing")
    return "\n".join(lines)


# -- extremal search ----------------------------------------------------------


def search_extremal(max_order: int = 4, budget: int = 200_000) -> dict:
    """Exhaustive compatible-action census over small builtin group pairs.

    Emits, per ordered group pair, the census of examined/compatible
    assignments, the per-m maxima of the derivative subgroup order, and a
    re-checkable sample of incompatible assignments.  A zero or insufficient
    budget yields a partial census flagged as such.
    """
    groups = search_group_list(max_order)
    groups = [g for g in groups if g.size <= max_order]
    per_m_max: dict[int, int] = {}
    pair_rows = []
    witnesses = []
    partial = False
    remaining = budget
    for g in groups:
        for h in groups:
            try:
                search = enumerate_compatible_actions(g, h, budget=remaining)
            except SearchBudgetExceeded:
                partial = True
                pair_rows.append(
                    {"G": g.name, "H": h.name, "skipped": "budget exhausted"}
                )
                continue
            remaining -= search.census.examined
            row = {
                "G": g.name,
                "H": h.name,
                "examined": search.census.examined,
                "compatible": search.census.compatible,
                "incompatible": search.census.incompatible,
            }
            pair_rows.append(row)
            for pair in search.pairs:
                data = derivative(pair, "g-under-h")
                current = per_m_max.get(data.m, 0)
                per_m_max[data.m] = max(current, len(data.subgroup))
            for sample in search.incompatible_samples[:1]:
                witnesses.append(
                    {
                        "G": g.name,
                        "H": h.name,
                        "act_h_on_g": sample.act_h_on_g.tolist(),
                        "act_g_on_h": sample.act_g_on_h.tolist(),
                        "family": sample.witness.family,
                        "triple": list(sample.witness.triple),
                    }
                )
    return {
        "max_order": max_order,
        "budget": budget,
        "partial": partial,
        "pairs": pair_rows,
        "per_m_max_derivative": {str(m): v for m, v in sorted(per_m_max.items())},
        "incompatible_witnesses": witnesses,
    }


def recheck_witness(entry: dict) -> bool:
    """Re-verify that a reported incompatible witness violates compatibility."""
    from .catalog import builtin_group

    pair = ActionPair(
        builtin_group(entry["G"]),
        builtin_group(entry["H"]),
        entry["act_h_on_g"],
        entry["act_g_on_h"],
        unchecked=True,
    )
    witness = check_compatibility(pair)
    return witness is not None and list(witness.triple) == entry["triple"] and (
        witness.family == entry["family"]
    )
