"""
RunConfig: the validated parameter set of one CLI run.

Every value that can change a report is here, so identical configs give
byte-identical reports. Sampled suites refuse to run without a seed.
"""

import os
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

from src.core.errors import ConfigError
from src.core.window import DomainWindow

THREADS_ENV = "RELFIX_THREADS"

SUITE_NAMES = ("xlength", "qgimage", "cascades", "hren", "proj", "bcp", "maln", "bgen")
ALL_ONLY_CHECKS = (
    "closure",
    "induced",
    "e_fine_stability",
    "companion_proximity",
    "qc_profile",
    "qc_aux",
    "fine_midpoint",
    "fixed_proximity",
    "translation",
)
SAMPLED_SUITES = frozenset({"xlength", "qgimage", "hren", "proj", "bcp", "all"})

EXHAUSTIVE_WINDOW_LIMIT = 40000


def workers_from_env() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"{THREADS_ENV} must be >= 1, got {value}")
    return value


def _positive_int(name: str, value: Any) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be int, got {type(value).__name__}")
    if value < 1:
        raise ConfigError(f"{name} must be >= 1, got {value}")


def _non_negative_int(name: str, value: Any) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be int, got {type(value).__name__}")
    if value < 0:
        raise ConfigError(f"{name} must be >= 0, got {value}")


@dataclass
class RunConfig:
    """
    - R_syl, R_x: window bounds
    - E: fineness threshold for the fixed-sample suites
    - mu: endpoint closeness for the stability restatement
    - theta: displacement bound for the fixed-proximity probe
    - P: generating-set bound for the bounded generation check
    - intersection_threshold: None means 2 * R_syl
    - exhaustive: use every fixed triangle instead of sampling `samples`
    """
    group_path: str
    automorphism: Optional[str] = None
    R_syl: int = 2
    R_x: int = 2
    suites: tuple[str, ...] = ()
    samples: int = 200
    seed: Optional[int] = None
    out_path: Optional[str] = None
    output_format: str = "json"
    bfs_radius_cap: int = 8
    label_cap: int = 4096
    intersection_threshold: Optional[int] = None
    E: int = 0
    mu: int = 2
    theta: int = 2
    R: int = 1
    P: int = 4
    exhaustive: bool = True
    workers: int = field(default_factory=workers_from_env)

    def __post_init__(self) -> None:
        if not isinstance(self.group_path, str) or not self.group_path:
            raise ConfigError("group_path must be a non-empty string")
        _non_negative_int("R_syl", self.R_syl)
        _non_negative_int("R_x", self.R_x)
        for name in ("samples", "bfs_radius_cap", "label_cap", "workers"):
            _positive_int(name, getattr(self, name))
        for name in ("E", "mu", "theta", "R", "P"):
            _non_negative_int(name, getattr(self, name))
        if self.intersection_threshold is not None:
            _positive_int("intersection_threshold", self.intersection_threshold)
        if self.seed is not None:
            if isinstance(self.seed, bool) or not isinstance(self.seed, int):
                raise ConfigError(f"seed must be int or None, got {type(self.seed).__name__}")
        if self.output_format not in ("json", "csv"):
            raise ConfigError(f"output_format must be json or csv, got {self.output_format!r}")
        self.suites = tuple(self.suites)
        for suite in self.suites:
            if suite not in SUITE_NAMES and suite != "all":
                raise ConfigError(f"Unknown suite {suite!r}; known: {', '.join(SUITE_NAMES + ('all',))}")
        if self.seed is None and SAMPLED_SUITES.intersection(self.suites):
            raise ConfigError("seed is required for sampled suites")

    @property
    def window(self) -> DomainWindow:
        return DomainWindow(self.R_syl, self.R_x)

    @property
    def threshold(self) -> int:
        if self.intersection_threshold is None:
            return 2 * self.R_syl
        return self.intersection_threshold

    def expanded_suites(self) -> tuple[str, ...]:
        """Suites in canonical order; `all` adds the fixed-sample checks."""
        if "all" in self.suites:
            return SUITE_NAMES + ALL_ONLY_CHECKS
        return tuple(name for name in SUITE_NAMES if name in self.suites)

    def to_dict(self) -> dict[str, Any]:
        """Report-facing view; output location and worker count never change results."""
        data = asdict(self)
        for key in ("out_path", "workers", "output_format"):
            data.pop(key)
        data["group_path"] = os.path.basename(self.group_path)
        data["suites"] = list(self.suites)
        return data
