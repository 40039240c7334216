"""Command-line front end.

Exit status: 0 when no errors were found, 1 on errors, 2 on usage faults.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .catalog import CatalogError
from .diagnostics import Report
from .lmf import LmfError, extract_entry
from .model import Status
from .tables import TableError
from .validate import compute_stats, validate_bytes

EXIT_OK, EXIT_ERRORS, EXIT_USAGE = 0, 1, 2


def _status_arg(text: str) -> Status:
    try:
        return Status(text.replace("-", " ").replace("_", " "))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"unknown status {text!r} (use one of: "
            + ", ".join(s.value.replace(" ", "-") for s in Status) + ")") from None


def _delimiter_arg(text: str) -> str:
    text = {"\\t": "\t", "tab": "\t"}.get(text, text)
    if len(text) != 1:
        raise argparse.ArgumentTypeError("delimiter must be a single character")
    return text


def _jobs_arg(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("--jobs must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lg2lmf",
                                     description="Compile Lexicon-Grammar tables to LMF XML.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert class tables to an LMF document")
    p.add_argument("--tables", required=True, type=Path, help="directory of <class>.csv tables")
    p.add_argument("--classes", required=True, type=Path, help="table of classes")
    p.add_argument("--catalog", required=True, type=Path, help="feature catalog")
    p.add_argument("--category", default="verb", choices=["verb"])
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--jobs", type=_jobs_arg, default=1)
    p.add_argument("--delimiter", type=_delimiter_arg, default=";")
    p.add_argument("--dump-intermediate", type=Path, metavar="FILE",
                   help="also write the intermediate feature-tree lexicon")
    p.add_argument("--exclude-status", type=_status_arg, action="append", default=[],
                   metavar="STATUS", help="drop entries with this status (repeatable)")
    p.add_argument("--quiet", action="store_true", help="do not print warnings")

    p = sub.add_parser("validate", help="check an LMF document")
    p.add_argument("file", type=Path)
    p.add_argument("--strict", action="store_true",
                   help="treat compatibility warnings as errors")

    p = sub.add_parser("stats", help="report lexicon statistics")
    p.add_argument("file", type=Path)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("extract", help="print one entry's canonical XML")
    p.add_argument("file", type=Path)
    p.add_argument("--entry", required=True)
    return parser


def _print_report(report: Report, quiet: bool = False) -> None:
    for f in report:
        if quiet and f.severity != "error":
            continue
        print(f, file=sys.stderr)


def _read(path: Path) -> bytes:
    return path.read_bytes()


def cmd_convert(args: argparse.Namespace) -> int:
    from .pipeline import convert, dump_lglex

    try:
        result = convert(args.tables, args.classes, args.catalog, args.category,
                         delimiter=args.delimiter, jobs=args.jobs,
                         exclude_statuses=tuple(args.exclude_status))
    except (CatalogError, TableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERRORS
    _print_report(result.report, args.quiet)
    if args.dump_intermediate is not None:
        args.dump_intermediate.write_bytes(dump_lglex(result.entries))
    if result.report.errors or result.document is None:
        print(f"{len(result.report.errors)} error(s); no output written", file=sys.stderr)
        return EXIT_ERRORS
    args.out.write_bytes(result.output)
    print(compute_stats(result.document, len(result.report.warnings)).to_text(), end="")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    _, report = validate_bytes(_read(args.file), strict=args.strict)
    _print_report(report)
    verdict = "PASS" if report.passed else "FAIL"
    print(f"{verdict}: {len(report.errors)} error(s), {len(report.warnings)} warning(s)")
    return EXIT_OK if report.passed else EXIT_ERRORS


def cmd_stats(args: argparse.Namespace) -> int:
    doc, report = validate_bytes(_read(args.file))
    if not report.passed or doc is None:
        _print_report(report)
        return EXIT_ERRORS
    stats = compute_stats(doc, len(report.warnings))
    print(stats.to_json() if args.format == "json" else stats.to_text(), end="\n"
          if args.format == "json" else "")
    return EXIT_OK


def cmd_extract(args: argparse.Namespace) -> int:
    try:
        print(extract_entry(_read(args.file), args.entry))
    except LmfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERRORS
    return EXIT_OK


COMMANDS = {"convert": cmd_convert, "validate": cmd_validate, "stats": cmd_stats,
            "extract": cmd_extract}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage faults and 0 for --help/--version
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except OSError as exc:
        print(f"error: {exc.filename or ''}: {exc.strerror}", file=sys.stderr)
        return EXIT_ERRORS


if __name__ == "__main__":
    sys.exit(main())
