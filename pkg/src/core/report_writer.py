"""
Report serialization.

One JSON document per run with sorted keys, so identical runs give
identical bytes. Window ladders additionally go out as CSV.
"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Iterable, Optional

from src.core.probe_report import ProbeReport

TOOL_VERSION = "0.1.0"

LADDER_FIELDS = ("window", "fixed", "pairs", "skipped", "sigma")


def report_document(
    config: dict[str, Any],
    group_digest: str,
    results: Iterable[tuple[str, ProbeReport]],
) -> dict[str, Any]:
    per_check = []
    for suite, report in results:
        entry = report.to_dict()
        entry["suite"] = suite
        per_check.append(entry)
    return {
        "tool_version": TOOL_VERSION,
        "config": config,
        "group_digest": group_digest,
        "per_check": per_check,
    }


def emit_report(
    config: dict[str, Any],
    group_digest: str,
    results: Iterable[tuple[str, ProbeReport]],
) -> str:
    document = report_document(config, group_digest, results)
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def read_report(text: str) -> tuple[dict[str, Any], list[tuple[str, ProbeReport]]]:
    """Inverse of emit_report: (header, [(suite, report)])."""
    document = json.loads(text)
    header = {key: value for key, value in document.items() if key != "per_check"}
    results = [(entry.get("suite", ""), ProbeReport.from_dict(entry)) for entry in document["per_check"]]
    return header, results


def has_violations(results: Iterable[tuple[str, ProbeReport]]) -> bool:
    return any(report.violations for _, report in results)


def emit_ladder_csv(rows: Iterable[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=LADDER_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: ("" if row.get(key) is None else row[key]) for key in LADDER_FIELDS})
    return buffer.getvalue()


def write_output(text: str, out_path: Optional[str]) -> None:
    """Write to out_path, or stdout when it is None. OSError propagates."""
    if out_path is None:
        print(text, end="")
        return
    path = Path(out_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
