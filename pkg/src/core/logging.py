import json
import hashlib
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

from src.core.probe_report import ProbeReport


class RunLogger:
    """
    JSON-lines run diagnostics in <log_dir>/run_events.jsonl.

    Events describe what ran and how it ended; estimates and witnesses stay
    in the report.
    """

    def __init__(self, log_dir: str = "logs", run_id: Optional[str] = None):
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self.log_file = self.log_dir / "run_events.jsonl"
        self.run_id = run_id or str(uuid.uuid4())

    def compute_input_hash(self, group_text: str, automorphism_text: str = "") -> str:
        digest = hashlib.sha256()
        digest.update(group_text.encode("utf-8"))
        digest.update(b"\0")
        digest.update(automorphism_text.encode("utf-8"))
        return digest.hexdigest()

    def _write(self, event: str, payload: dict[str, Any]) -> None:
        log_entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "run_id": self.run_id,
            "event": event,
            **payload,
        }
        with open(self.log_file, "a") as f:
            f.write(json.dumps(log_entry, sort_keys=True) + "\n")

    def log_suite_start(self, suite: str, automorphism: Optional[str], input_hash: str) -> None:
        self._write("suite_start", {
            "suite": suite,
            "automorphism": automorphism,
            "input_hash": input_hash,
        })

    def log_check(self, suite: str, report: ProbeReport) -> None:
        self._write("check", {
            "suite": suite,
            "check": report.name,
            "status": report.status.value,
            "samples": report.samples,
            "skipped": report.skipped,
            "violation_count": len(report.violations),
        })

    def log_run_end(self, exit_code: int, check_count: int) -> None:
        self._write("run_end", {
            "exit_code": exit_code,
            "check_count": check_count,
        })
