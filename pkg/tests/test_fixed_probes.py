"""
Quasiconvexity profile and the probes measured against the fixed sample.
"""

import pytest

from src.core.fineness import fixed_pair_geodesics
from src.core.fixed_probes import (
    companion_proximity_check,
    fine_midpoint_probe,
    fixed_proximity_probe,
    qc_aux_probe,
    quasiconvexity_profile,
    window_ladder,
)
from src.core.fixed_subgroup import enumerate_fixed
from src.core.probe_report import ProbeStatus
from src.core.window import DomainWindow

SMALL = DomainWindow(1, 1)
MEDIUM = DomainWindow(2, 2)


class TestQuasiconvexityProfile:

    def test_phi1(self, phi1):
        report = quasiconvexity_profile(phi1, SMALL)
        assert report.estimate["sigma"] == 0
        assert report.samples == 3
        assert report.counts["fixed"] == 3

    def test_inner_t(self, inner_t):
        report = quasiconvexity_profile(inner_t, MEDIUM)
        assert report.samples == 10
        assert report.estimate["sigma"] == 0

    def test_trivial_fix_has_no_pairs(self, phi2):
        report = quasiconvexity_profile(phi2, MEDIUM)
        assert report.samples == 0
        assert report.estimate["sigma"] == 0

    def test_label_cap_skips(self, conj_ab):
        report = quasiconvexity_profile(conj_ab, SMALL, label_cap=1)
        assert report.skipped == 12


class TestWindowLadder:

    def test_rows_follow_window_order(self, phi1):
        rows = window_ladder(phi1, [SMALL, MEDIUM])
        assert rows == [
            {"window": "(1,1)", "fixed": 3, "pairs": 3, "skipped": 0, "sigma": 0},
            {"window": "(2,2)", "fixed": 5, "pairs": 10, "skipped": 0, "sigma": 0},
        ]


class TestFixedProximity:

    def test_fixed_points_only(self, phi1):
        report = fixed_proximity_probe(phi1, SMALL, 0)
        assert report.samples == 3
        assert report.estimate["mu"] == 0

    def test_slightly_moved_points(self, phi1):
        report = fixed_proximity_probe(phi1, SMALL, 2)
        assert report.samples == 9
        assert report.estimate["mu"] == 1

    def test_negative_theta(self, phi1):
        with pytest.raises(ValueError):
            fixed_proximity_probe(phi1, SMALL, -1)


class TestCompanionProximity:

    def test_component_endpoints_are_fixed(self, phi1):
        sample = enumerate_fixed(phi1, SMALL)
        report = companion_proximity_check(phi1, sample, fixed_pair_geodesics(phi1, sample, 16), bound=0)
        assert report.status == ProbeStatus.PASS
        assert report.samples == 6
        assert report.estimate["mu_prime"] == 0


class TestFineMidpoint:

    def test_inner_t(self, inner_t):
        sample = enumerate_fixed(inner_t, MEDIUM)
        report = fine_midpoint_probe(inner_t, sample, 0, 1, fixed_pair_geodesics(inner_t, sample, 16))
        assert report.samples == 12
        assert report.skipped == 8
        assert report.estimate == {"xi": 0, "zeta": 2, "xi_tail": 0}

    def test_short_geodesics_are_excluded(self, phi1):
        sample = enumerate_fixed(phi1, SMALL)
        report = fine_midpoint_probe(phi1, sample, 4, 1, fixed_pair_geodesics(phi1, sample, 16))
        assert report.status == ProbeStatus.VACUOUS
        assert report.estimate["xi"] is None


class TestQcAux:

    def test_inner_t(self, inner_t):
        sample = enumerate_fixed(inner_t, MEDIUM)
        report = qc_aux_probe(inner_t, sample, 0, fixed_pair_geodesics(inner_t, sample, 16))
        assert report.samples == 20
        assert report.estimate["delta"] == 0
