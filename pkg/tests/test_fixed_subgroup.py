"""
Fix(phi) on windows, closure, bounded generation and induced peripherals.
"""

import pytest

from src.core.automorphism import inner_automorphism
from src.core.elements import IDENTITY
from src.core.fixed_subgroup import (
    bounded_generation_check,
    centralizer_oracle,
    distance_to_sample,
    enumerate_fixed,
    fixed_sample_closure_check,
    induced_peripherals,
    is_fixed,
    peripheral_intersection_check,
)
from src.core.group_parsers import parse_word
from src.core.normal_form import power
from src.core.probe_report import ProbeStatus
from src.core.window import DomainWindow, count_window, random_elements


class TestEnumerateFixed:

    def test_phi1_fixes_powers_of_ab(self, phi1):
        spec = phi1.spec
        sample = enumerate_fixed(phi1, DomainWindow(3, 3))
        ab = parse_word(spec, "a b")
        assert len(sample) == 7
        assert set(sample.elements) == {power(spec, ab, k) for k in range(-3, 4)}
        assert sample.elements[0] == IDENTITY

    def test_phi2_fixes_only_identity(self, phi2):
        sample = enumerate_fixed(phi2, DomainWindow(2, 2))
        assert sample.elements == (IDENTITY,)
        assert sample.nontrivial() == ()

    @pytest.mark.slow
    def test_phi2_fixes_only_identity_on_large_window(self, phi2):
        assert enumerate_fixed(phi2, DomainWindow(3, 2)).elements == (IDENTITY,)

    def test_inner_fix_is_centralizer(self, inner_t, g1):
        window = DomainWindow(2, 2)
        sample = enumerate_fixed(inner_t, window)
        assert len(sample) == 5
        assert set(sample.elements) == set(centralizer_oracle(g1, parse_word(g1, "t"), window))

    @pytest.mark.slow
    @pytest.mark.parametrize("group", ["g1", "g2"])
    def test_inner_fix_is_centralizer_for_random_elements(self, request, group):
        spec = request.getfixturevalue(group)
        window = DomainWindow(2, 2)
        for n, g in enumerate(random_elements(spec, DomainWindow(3, 2), 20, 20)):
            psi = inner_automorphism(spec, g, f"inner_{n}", radius_cap=16)
            assert set(enumerate_fixed(psi, window).elements) == set(centralizer_oracle(spec, g, window))

    def test_conj_ab_fixes_the_peripheral_factor(self, conj_ab):
        sample = enumerate_fixed(conj_ab, DomainWindow(2, 2))
        assert len(sample) == 25
        assert all(len(g.syllables) <= 1 for g in sample.elements)

    def test_identity_fixes_everything(self, identity_g1, g1):
        window = DomainWindow(1, 1)
        assert len(enumerate_fixed(identity_g1, window)) == count_window(g1, window)

    def test_membership_and_distance(self, phi1):
        spec = phi1.spec
        sample = enumerate_fixed(phi1, DomainWindow(1, 1))
        assert parse_word(spec, "a b") in sample
        assert is_fixed(phi1, parse_word(spec, "a^5 b^5"))
        assert distance_to_sample(spec, parse_word(spec, "a b"), sample) == 0
        assert distance_to_sample(spec, parse_word(spec, "t"), sample) == 1


class TestClosure:

    @pytest.mark.parametrize("name", ["phi1", "inner_t", "conj_ab", "phi2"])
    def test_samples_are_closed(self, request, name):
        phi = request.getfixturevalue(name)
        report = fixed_sample_closure_check(phi.spec, enumerate_fixed(phi, DomainWindow(2, 2)))
        assert report.status == ProbeStatus.PASS


class TestBoundedGeneration:

    def test_phi1_generated_by_rel_length_one(self, phi1):
        report = bounded_generation_check(phi1, DomainWindow(3, 3), 4)
        assert report.status == ProbeStatus.PASS
        assert report.estimate["P_hat"] == 1

    def test_inner_t_generated_by_t(self, inner_t):
        report = bounded_generation_check(inner_t, DomainWindow(2, 2), 3)
        assert report.estimate["P_hat"] == 1

    def test_trivial_fix_needs_nothing(self, phi2):
        report = bounded_generation_check(phi2, DomainWindow(2, 1), 2)
        assert report.estimate["P_hat"] == 0

    def test_bound_too_small(self, phi1):
        report = bounded_generation_check(phi1, DomainWindow(2, 2), 0)
        assert report.status == ProbeStatus.FAIL
        assert report.violations[0]["kind"] == "not_generated"

    def test_negative_bound(self, phi1):
        with pytest.raises(ValueError):
            bounded_generation_check(phi1, DomainWindow(1, 1), -1)


class TestInducedPeripherals:

    def test_conj_ab_has_one_class(self, conj_ab):
        report = induced_peripherals(conj_ab, DomainWindow(2, 2), threshold=4)
        assert report.status == ProbeStatus.PASS
        assert report.estimate["classes"] == 1
        assert report.witness["classes"] == [{"factor": "A", "conjugator": "1", "size": 25}]

    def test_phi1_cyclic_intersection(self, phi1):
        report = induced_peripherals(phi1, DomainWindow(3, 3), threshold=6)
        assert report.status == ProbeStatus.PASS
        assert report.witness["classes"] == [{"factor": "A", "conjugator": "1", "size": 7}]

    def test_threshold_excludes_small_intersections(self, phi1):
        report = induced_peripherals(phi1, DomainWindow(1, 1), threshold=6)
        assert report.estimate["classes"] == 0

    def test_no_peripheral_part(self, inner_t):
        report = induced_peripherals(inner_t, DomainWindow(2, 2))
        assert report.estimate["classes"] == 0
        assert report.witness == {"classes": []}


class TestPeripheralIntersection:

    def test_free_product_intersections_are_trivial(self, g2):
        report = peripheral_intersection_check(g2, DomainWindow(1, 1))
        assert report.status == ProbeStatus.PASS
        assert report.counts["excluded"] > 0

    def test_explicit_conjugators(self, g1):
        report = peripheral_intersection_check(g1, DomainWindow(1, 2), [parse_word(g1, "t"), parse_word(g1, "a")])
        assert report.samples == 1
        assert report.counts["excluded"] == 1
