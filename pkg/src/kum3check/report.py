"""Verification reports: typed checks with deterministic json and markdown.

A check records one verified equality: an identifier, a human-readable
reference for where the expected value comes from, the expected and
computed values rendered as exact strings, a pass/fail status, and a
derivation trail of intermediate values.  Reports sort their checks by
identifier so the output is byte-identical however the checks were
produced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, format_rational


def render_value(value) -> str:
    """Deterministic exact rendering for report fields."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    if isinstance(value, str):
        return value
    if isinstance(value, Matrix):
        return render_value(value.to_lists())
    if isinstance(value, (tuple, list)):
        return "[" + ", ".join(render_value(x) for x in value) + "]"
    if isinstance(value, dict):
        items = sorted(value.items())
        return "{" + ", ".join(f"{k}: {render_value(v)}" for k, v in items) + "}"
    raise TypeError(f"cannot render {type(value).__name__} deterministically")


@dataclass(frozen=True)
class Check:
    id: str
    ref: str
    expected: str
    computed: str
    status: str
    trail: tuple[str, ...]


def make_check(check_id: str, ref: str, expected, computed, trail=()) -> Check:
    """Compare raw values exactly, then render both sides."""
    if not ref:
        raise ValueError(f"{check_id}: reference string must be nonempty")
    status = "pass" if expected == computed else "fail"
    return Check(
        id=check_id,
        ref=ref,
        expected=render_value(expected),
        computed=render_value(computed),
        status=status,
        trail=tuple(trail),
    )


def error_check(check_id: str, ref: str, error: Exception) -> Check:
    return Check(
        id=check_id,
        ref=ref,
        expected="no error",
        computed=f"{type(error).__name__}: {error}",
        status="fail",
        trail=(),
    )


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    checks: tuple[Check, ...]

    def __post_init__(self) -> None:
        ids = [c.id for c in self.checks]
        if len(set(ids)) != len(ids):
            dupes = sorted({x for x in ids if ids.count(x) > 1})
            raise ValueError(f"duplicate check ids: {dupes}")
        object.__setattr__(
            self, "checks", tuple(sorted(self.checks, key=lambda c: c.id))
        )

    @property
    def status(self) -> str:
        return "pass" if all(c.status == "pass" for c in self.checks) else "fail"

    @property
    def counts(self) -> tuple[int, int]:
        passed = sum(1 for c in self.checks if c.status == "pass")
        return passed, len(self.checks) - passed


def merge_reports(name: str, reports: list[SuiteReport]) -> SuiteReport:
    """Combine per-suite reports, prefixing ids with their suite name."""
    checks = []
    for rep in sorted(reports, key=lambda r: r.suite):
        for check in rep.checks:
            checks.append(
                Check(
                    id=f"{rep.suite}/{check.id}",
                    ref=check.ref,
                    expected=check.expected,
                    computed=check.computed,
                    status=check.status,
                    trail=check.trail,
                )
            )
    return SuiteReport(suite=name, checks=tuple(checks))


def emit_json(report: SuiteReport) -> str:
    obj = {
        "suite": report.suite,
        "status": report.status,
        "checks": [
            {
                "id": c.id,
                "ref": c.ref,
                "expected": c.expected,
                "computed": c.computed,
                "status": c.status,
                "trail": list(c.trail),
            }
            for c in report.checks
        ],
    }
    return json.dumps(obj, indent=2) + "\n"


def emit_markdown(report: SuiteReport) -> str:
    """One table per suite; the merged report groups by id prefix."""
    passed, failed = report.counts
    lines = [
        f"# suite {report.suite}: {report.status}",
        "",
        f"{passed} passed, {failed} failed",
    ]
    groups: dict[str, list[Check]] = {}
    for check in report.checks:
        prefix, _, rest = check.id.partition("/")
        if report.suite == "all" and rest:
            groups.setdefault(prefix, []).append(check)
        else:
            groups.setdefault(report.suite, []).append(check)
    for group in sorted(groups):
        lines += [
            "",
            f"## {group}",
            "",
            "| check | reference | expected | computed | status |",
            "| --- | --- | --- | --- | --- |",
        ]
        for check in groups[group]:
            cells = (
                check.id,
                check.ref,
                check.expected,
                check.computed,
                check.status,
            )
            lines.append("| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |")
    return "\n".join(lines) + "\n"
