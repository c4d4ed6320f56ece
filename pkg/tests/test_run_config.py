"""
RunConfig validation and the report-facing view of a run.
"""

import pytest

from src.core.errors import ConfigError
from src.core.run_config import ALL_ONLY_CHECKS, SUITE_NAMES, THREADS_ENV, RunConfig, workers_from_env
from src.core.window import DomainWindow


class TestValidation:

    def test_defaults(self):
        config = RunConfig("g1.grp", workers=1)
        assert config.window == DomainWindow(2, 2)
        assert config.threshold == 4
        assert config.suites == ()

    @pytest.mark.parametrize("field,value", [
        ("R_syl", -1),
        ("samples", 0),
        ("bfs_radius_cap", 0),
        ("E", -2),
        ("P", True),
        ("seed", "7"),
        ("output_format", "xml"),
        ("intersection_threshold", 0),
    ])
    def test_rejects(self, field, value):
        with pytest.raises(ConfigError):
            RunConfig("g1.grp", workers=1, **{field: value})

    def test_empty_group_path(self):
        with pytest.raises(ConfigError):
            RunConfig("", workers=1)

    def test_unknown_suite(self):
        with pytest.raises(ConfigError) as exc:
            RunConfig("g1.grp", suites=("nope",), seed=1, workers=1)
        assert "nope" in str(exc.value)

    @pytest.mark.parametrize("suite", ["xlength", "qgimage", "hren", "proj", "bcp", "all"])
    def test_sampled_suites_need_a_seed(self, suite):
        with pytest.raises(ConfigError):
            RunConfig("g1.grp", suites=(suite,), workers=1)

    def test_window_only_suites_run_without_seed(self):
        config = RunConfig("g1.grp", suites=("maln", "bgen", "cascades"), workers=1)
        assert config.seed is None


class TestSuiteExpansion:

    def test_canonical_order(self):
        config = RunConfig("g1.grp", suites=("bgen", "maln"), workers=1)
        assert config.expanded_suites() == ("maln", "bgen")

    def test_all_adds_fixed_sample_checks(self):
        config = RunConfig("g1.grp", suites=("all",), seed=0, workers=1)
        assert config.expanded_suites() == SUITE_NAMES + ALL_ONLY_CHECKS


class TestToDict:

    def test_output_and_workers_excluded(self):
        config = RunConfig("/tmp/groups/g1.grp", suites=("maln",), out_path="out.json", workers=3)
        data = config.to_dict()
        assert "out_path" not in data
        assert "workers" not in data
        assert "output_format" not in data
        assert data["group_path"] == "g1.grp"
        assert data["suites"] == ["maln"]

    def test_identical_regardless_of_workers(self):
        assert RunConfig("g1.grp", workers=1).to_dict() == RunConfig("g1.grp", workers=4).to_dict()


class TestWorkersFromEnv:

    def test_unset(self, monkeypatch):
        monkeypatch.delenv(THREADS_ENV, raising=False)
        assert workers_from_env() == 1

    def test_set(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV, "3")
        assert workers_from_env() == 3
        assert RunConfig("g1.grp").workers == 3

    @pytest.mark.parametrize("raw", ["zero", "0", "-2"])
    def test_invalid(self, monkeypatch, raw):
        monkeypatch.setenv(THREADS_ENV, raw)
        with pytest.raises(ConfigError):
            workers_from_env()
