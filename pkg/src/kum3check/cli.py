"""Command line interface over the check suites.

Exit status: 0 when every check passes, 1 when any check fails, 2 for
configuration or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import ConfigDocument, ConfigError, default_config, load_config
from .engine import Engine
from .report import emit_json, emit_markdown
from .suites import SUITE_NAMES, run_suite


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kum3check",
        description=(
            "Exact rational verification of the sixfold intersection "
            "computations and their certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser(
        "verify", help="run one check suite and print its report"
    )
    verify.add_argument("suite", help="suite name; see list-suites")
    verify.add_argument("--config", help="path to a configuration JSON file")
    verify.add_argument(
        "--format", choices=("json", "markdown"), default="json",
        help="report format (default json)",
    )
    verify.add_argument(
        "--out", help="write the report to this path instead of stdout"
    )

    sub.add_parser("list-suites", help="print the available suite names")

    show = sub.add_parser(
        "show-config", help="print the resolved configuration with sources"
    )
    show.add_argument("--config", help="path to a configuration JSON file")
    return parser


def _load(path: str | None) -> ConfigDocument:
    if path is None:
        return default_config()
    return load_config(path)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list-suites":
        for name in SUITE_NAMES:
            print(name)
        return 0
    try:
        doc = _load(args.config)
    except (ConfigError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    if args.command == "show-config":
        print(json.dumps(doc.to_json_obj(), indent=2, sort_keys=True))
        return 0
    try:
        report = run_suite(Engine(doc), args.suite)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    text = emit_json(report) if args.format == "json" else emit_markdown(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.status == "pass" else 1


if __name__ == "__main__":
    raise SystemExit(main())
