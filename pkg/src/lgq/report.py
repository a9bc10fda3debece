"""Check records, verification reports, and their JSON and Markdown forms.

A report is a flat list of named checks, each carrying what was expected,
what was found, where the claim comes from, and how long the check took.
JSON is the machine contract: checks are sorted by id and timings are
zeroed unless explicitly requested, so two runs with the same flags and
seed emit byte-identical documents.  Markdown is for humans: the same
table of checks, with matrix-valued payloads expanded into grids.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Sequence

from .errors import IoError
from .laurent import LaurentPoly, RationalExpr
from .polytext import render_entry, render_matrix, render_poly
from .scalar import PFElem

PACKAGE_VERSION = "0.1.0"

_STATUSES = ("pass", "fail", "skipped")
_PROVENANCES = ("reference", "definition", "derived")


class Check:
    """One verified claim: identifier, human description, outcome, the
    expected and observed values, the source slug of the claim, how the
    expected value was obtained, and the measured runtime."""

    __slots__ = (
        "id",
        "description",
        "status",
        "expected",
        "actual",
        "paper_ref",
        "provenance",
        "runtime_ms",
    )

    def __init__(
        self,
        id: str,
        description: str,
        status: str,
        expected=None,
        actual=None,
        paper_ref: str = "",
        provenance: str = "derived",
        runtime_ms: int = 0,
    ):
        if status not in _STATUSES:
            raise ValueError("unknown status %r" % (status,))
        if provenance not in _PROVENANCES:
            raise ValueError("unknown provenance %r" % (provenance,))
        self.id = id
        self.description = description
        self.status = status
        self.expected = expected
        self.actual = actual
        self.paper_ref = paper_ref
        self.provenance = provenance
        self.runtime_ms = int(runtime_ms)


class VerificationReport:
    """A versioned, reproducibly identified collection of checks."""

    __slots__ = ("version", "run_id", "checks")

    def __init__(self, run_id: str, checks: Sequence[Check], version: str = PACKAGE_VERSION):
        ids = [c.id for c in checks]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate check ids")
        self.version = version
        self.run_id = run_id
        self.checks = list(checks)

    @property
    def status(self) -> str:
        live = [c for c in self.checks if c.status != "skipped"]
        return "pass" if all(c.status == "pass" for c in live) else "fail"

    def sorted_checks(self) -> list:
        return sorted(self.checks, key=lambda c: c.id)


def make_run_id(argv: Sequence[str], seed, version: str = PACKAGE_VERSION) -> str:
    """Digest of version, arguments and seed: equal inputs, equal id."""
    text = "%s|%s|%s" % (version, " ".join(argv), seed)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:12]


def _is_matrix(value) -> bool:
    if not isinstance(value, (list, tuple)) or not value:
        return False
    if not all(isinstance(row, (list, tuple)) and row for row in value):
        return False
    width = len(value[0])
    if any(len(row) != width for row in value):
        return False
    return all(
        isinstance(v, (int, Fraction, PFElem)) for row in value for v in row
    )


def render_value(value) -> str:
    """Stable one-line rendering of a check payload."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, Fraction, PFElem)):
        return render_entry(value)
    if isinstance(value, LaurentPoly):
        return render_poly(value)
    if isinstance(value, RationalExpr):
        return "(%s)/(%s)" % (render_poly(value.num), render_poly(value.den))
    if _is_matrix(value):
        return render_matrix(value)
    if isinstance(value, (list, tuple)):
        return "[%s]" % ",".join(render_value(v) for v in value)
    if isinstance(value, dict):
        return "{%s}" % ",".join(
            "%s: %s" % (k, render_value(value[k]))
            for k in sorted(value, key=str)
        )
    return str(value)


def _check_dict(check: Check, timings: bool) -> dict:
    return {
        "id": check.id,
        "description": check.description,
        "status": check.status,
        "expected": render_value(check.expected),
        "actual": render_value(check.actual),
        "paper_ref": check.paper_ref,
        "provenance": check.provenance,
        "runtime_ms": check.runtime_ms if timings else 0,
    }


def to_json(report: VerificationReport, timings: bool = False) -> str:
    doc = {
        "version": report.version,
        "run_id": report.run_id,
        "status": report.status,
        "checks": [_check_dict(c, timings) for c in report.sorted_checks()],
    }
    return json.dumps(doc, indent=2) + "\n"


def _matrix_markdown(rows) -> list:
    width = len(rows[0])
    out = ["| " + " | ".join("c%d" % j for j in range(width)) + " |"]
    out.append("|" + "---|" * width)
    for row in rows:
        out.append("| " + " | ".join(render_entry(v) for v in row) + " |")
    return out


def to_markdown(report: VerificationReport, timings: bool = False) -> str:
    lines = [
        "# Verification report",
        "",
        "- version: %s" % report.version,
        "- run id: %s" % report.run_id,
        "- status: %s" % report.status,
        "",
        "| id | status | description | expected | actual | ref | provenance | ms |",
        "|---|---|---|---|---|---|---|---|",
    ]
    checks = report.sorted_checks()
    for c in checks:
        lines.append(
            "| %s | %s | %s | %s | %s | %s | %s | %d |"
            % (
                c.id,
                c.status,
                c.description,
                render_value(c.expected).replace("|", "\\|"),
                render_value(c.actual).replace("|", "\\|"),
                c.paper_ref,
                c.provenance,
                c.runtime_ms if timings else 0,
            )
        )
    for c in checks:
        for label, value in (("expected", c.expected), ("actual", c.actual)):
            if _is_matrix(value):
                lines.append("")
                lines.append("## %s: %s" % (c.id, label))
                lines.append("")
                lines.extend(_matrix_markdown(value))
    lines.append("")
    return "\n".join(lines)


def emit_report(
    report: VerificationReport,
    format: str = "json",
    destination=None,
    timings: bool = False,
) -> str:
    """Serialize and optionally persist a report; returns the text."""
    if format == "json":
        text = to_json(report, timings)
    elif format == "md":
        text = to_markdown(report, timings)
    else:
        raise ValueError("unknown format %r" % (format,))
    if destination is not None:
        try:
            with open(destination, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as err:
            raise IoError(str(err))
    return text
