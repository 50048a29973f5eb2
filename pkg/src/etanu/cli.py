"""Command line interface.

Subcommands mirror the module boundaries: ``catalog`` lists entries,
``compute`` emits one tensor report, ``verify`` runs the check suite,
``search`` runs the exhaustive compatible-action census, and ``fixtures``
re-pins the expected reports.  Exit codes: 0 pass, 1 check failure, 2 input
error, 3 resource limit.  The environment variable ``ETA_MAX_COSETS``
overrides the enumeration ceiling.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import builtin_pair, catalog_by_id, default_catalog
from .coset import KERNEL_NAME
from .errors import EnumerationLimitExceeded, EtanuError, PairTooLarge, SearchBudgetExceeded
from .suite import (
    FIXTURES_RESOURCE,
    compute_entry_report,
    jsonl_lines,
    load_pinned_fixtures,
    recheck_witness,
    run_suite,
    search_extremal,
    text_summary,
)

EXIT_PASS = 0
EXIT_CHECK_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_LIMIT = 3


def _load_pair(source: str):
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        from .actions import pair_from_json_dict
        from .catalog import builtin_group

        data = json.loads(path.read_text())
        return pair_from_json_dict(data, builtin_group)
    return builtin_pair(source)


def _write_output(directory: str | None, name: str, text: str) -> None:
    if directory is None:
        return
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text)


def cmd_catalog(_args) -> int:
    for entry in default_catalog():
        print(f"{entry.id:26} {entry.pair_name:44} {','.join(entry.tags)}")
    return EXIT_PASS


def cmd_compute(args) -> int:
    try:
        pair = _load_pair(args.pair)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        payload = compute_entry_report(pair)
    except EnumerationLimitExceeded as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE_LIMIT
    except PairTooLarge as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    text = json.dumps(payload, indent=2)
    print(text)
    _write_output(args.output, "report.json", text)
    failures = [c for c in payload["checks"] if c["verdict"] == "fail"]
    return EXIT_CHECK_FAILURE if failures else EXIT_PASS


def cmd_verify(args) -> int:
    by_id = catalog_by_id()
    if args.entry:
        missing = [e for e in args.entry if e not in by_id]
        if missing:
            print(f"input error: unknown catalog entries {missing}", file=sys.stderr)
            return EXIT_INPUT_ERROR
        selection = [by_id[e] for e in args.entry]
    else:
        selection = default_catalog()
    report = run_suite(selection, jobs=args.jobs)
    lines = list(jsonl_lines(report))
    summary = text_summary(report, strict=args.strict)
    print(summary)
    _write_output(args.output, "verify.jsonl", "\n".join(lines) + "\n")
    _write_output(args.output, "verify.txt", summary + "\n")
    return report.exit_code(strict=args.strict)


def cmd_search(args) -> int:
    try:
        census = search_extremal(max_order=args.max_order, budget=args.budget)
    except SearchBudgetExceeded as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE_LIMIT
    bad = [w for w in census["incompatible_witnesses"] if not recheck_witness(w)]
    if bad:
        print(f"internal error: {len(bad)} witnesses fail re-checking", file=sys.stderr)
        return EXIT_CHECK_FAILURE
    text = json.dumps(census, indent=2)
    print(text)
    _write_output(args.output, "search.json", text)
    if census["partial"]:
        return EXIT_RESOURCE_LIMIT
    return EXIT_PASS


def cmd_fixtures(args) -> int:
    if not args.pin:
        pinned = load_pinned_fixtures()
        print(json.dumps(pinned, indent=2))
        return EXIT_PASS
    if not args.output:
        print("input error: --pin requires an explicit --output directory", file=sys.stderr)
        return EXIT_INPUT_ERROR
    fixtures = {}
    for entry in default_catalog():
        payload = compute_entry_report(entry.build())
        fails = [c for c in payload["checks"] if c["verdict"] == "fail"]
        if fails:
            print(f"refusing to pin {entry.id}: {len(fails)} failing checks", file=sys.stderr)
            return EXIT_CHECK_FAILURE
        fixtures[entry.id] = payload["report"]
        print(f"pinned {entry.id}", file=sys.stderr)
    text = json.dumps(fixtures, indent=2, sort_keys=True)
    _write_output(args.output, FIXTURES_RESOURCE, text)
    print(f"wrote {Path(args.output) / FIXTURES_RESOURCE}", file=sys.stderr)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etanu",
        description=(
            "Realize compatible group action pairs, extract tensor subgroups, "
            f"and verify structural facts about them (kernel: {KERNEL_NAME})."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("catalog", help="list the default catalog entries")

    compute = sub.add_parser("compute", help="emit the tensor report for one pair")
    compute.add_argument("--pair", required=True, help="builtin pair name or pair JSON file")
    compute.add_argument("--output", help="directory for report files")

    verify = sub.add_parser("verify", help="run the verification suite")
    verify.add_argument("--entry", action="append", help="catalog entry id (repeatable)")
    verify.add_argument("--all", action="store_true", help="run the whole catalog (default)")
    verify.add_argument("--strict", action="store_true", help="limit-exceeded and unpinned fixtures fail")
    verify.add_argument("--jobs", type=int, default=1, help="parallel workers")
    verify.add_argument("--output", help="directory for report files")

    search = sub.add_parser("search", help="exhaustive compatible-action census")
    search.add_argument("--max-order", type=int, default=4)
    search.add_argument("--budget", type=int, default=200_000, help="max assignments examined")
    search.add_argument("--output", help="directory for report files")

    fixtures = sub.add_parser("fixtures", help="show or re-pin expected reports")
    fixtures.add_argument("--pin", action="store_true", help="recompute and write fixtures")
    fixtures.add_argument("--output", help="directory to write fixtures.json into")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "catalog": cmd_catalog,
        "compute": cmd_compute,
        "verify": cmd_verify,
        "search": cmd_search,
        "fixtures": cmd_fixtures,
    }
    try:
        return handlers[args.command](args)
    except EtanuError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILURE


if __name__ == "__main__":
    sys.exit(main())
