"""
ProbeReport: the single result schema for every check and probe.

A report carries the parameters it ran with, how many samples it saw, the
estimated constants (maxima over the sample), and the witnesses of any
violation. Reports from shards of one run merge by max over estimates and
concatenation of violations in shard order. A report with a qualifier is
vacuous until that count is positive, which is decided on the merged report.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional


class ProbeStatus(Enum):
    """
    - pass: samples seen, no violations
    - fail: at least one violation
    - vacuous: nothing qualified for the check; never counted as evidence
    """
    PASS = "pass"
    FAIL = "fail"
    VACUOUS = "vacuous"


Estimate = Optional[int]


@dataclass
class ProbeReport:
    name: str
    params: dict[str, Any] = field(default_factory=dict)
    samples: int = 0
    estimate: dict[str, Estimate] = field(default_factory=dict)
    violations: list[dict[str, Any]] = field(default_factory=list)
    witness: Optional[dict[str, Any]] = None
    skipped: int = 0
    counts: dict[str, int] = field(default_factory=dict)
    seed: Optional[int] = None
    qualifier: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ValueError("ProbeReport.name must be a non-empty string")
        if not isinstance(self.samples, int) or self.samples < 0:
            raise ValueError(f"ProbeReport.samples must be int >= 0, got {self.samples!r}")

    @property
    def vacuous(self) -> bool:
        if self.qualifier is not None and not self.counts.get(self.qualifier):
            return True
        return self.samples == 0

    @property
    def status(self) -> ProbeStatus:
        if self.violations:
            return ProbeStatus.FAIL
        if self.vacuous:
            return ProbeStatus.VACUOUS
        return ProbeStatus.PASS

    def observe(self, key: str, value: int, witness: Optional[dict[str, Any]] = None) -> None:
        """Raise estimate[key] to value; the first key observed owns the witness."""
        current = self.estimate.get(key)
        if current is None or value > current:
            self.estimate[key] = value
            if witness is not None and key == next(iter(self.estimate)):
                self.witness = witness

    def declare(self, *keys: str) -> None:
        """Fix estimate key order (and report None) before any observation."""
        for key in keys:
            self.estimate.setdefault(key, None)

    def count(self, key: str, amount: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + amount

    def violate(self, **witness: Any) -> None:
        self.violations.append(witness)

    def merge(self, other: "ProbeReport") -> "ProbeReport":
        if other.name != self.name:
            raise ValueError(f"Cannot merge report {other.name!r} into {self.name!r}")
        merged = ProbeReport(
            name=self.name,
            params=dict(self.params),
            samples=self.samples + other.samples,
            estimate=dict(self.estimate),
            violations=list(self.violations) + list(other.violations),
            witness=self.witness,
            skipped=self.skipped + other.skipped,
            counts=dict(self.counts),
            seed=self.seed if self.seed is not None else other.seed,
            qualifier=self.qualifier or other.qualifier,
        )
        lead = next(iter(merged.estimate), None) or next(iter(other.estimate), None)
        for key, value in other.estimate.items():
            current = merged.estimate.get(key)
            if value is not None and (current is None or value > current):
                merged.estimate[key] = value
                if key == lead:
                    merged.witness = other.witness
            else:
                merged.estimate.setdefault(key, value)
        for key, value in other.counts.items():
            merged.counts[key] = merged.counts.get(key, 0) + value
        return merged

    def to_dict(self) -> dict[str, Any]:
        out = {
            "name": self.name,
            "params": dict(self.params),
            "samples": self.samples,
            "estimate": dict(self.estimate),
            "violations": list(self.violations),
            "vacuous": self.vacuous,
            "status": self.status.value,
            "skipped": self.skipped,
            "counts": dict(self.counts),
            "witness": self.witness,
            "seed": self.seed,
        }
        if self.qualifier is not None:
            out["qualifier"] = self.qualifier
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ProbeReport":
        return cls(
            name=data["name"],
            params=dict(data.get("params", {})),
            samples=data.get("samples", 0),
            estimate=dict(data.get("estimate", {})),
            violations=list(data.get("violations", [])),
            witness=data.get("witness"),
            skipped=data.get("skipped", 0),
            counts=dict(data.get("counts", {})),
            seed=data.get("seed"),
            qualifier=data.get("qualifier"),
        )


def merge_reports(reports: list[ProbeReport]) -> ProbeReport:
    if not reports:
        raise ValueError("merge_reports needs at least one report")
    merged = reports[0]
    for report in reports[1:]:
        merged = merged.merge(report)
    return merged
