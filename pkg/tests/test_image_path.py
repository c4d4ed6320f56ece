"""
Images of paths, companions, and the checks built on them.
"""

import pytest

from src.core.automorphism import apply_aut
from src.core.elements import IDENTITY, ExtraLetter, HLetter, XLetter
from src.core.errors import AutomorphismError, RelfixErrorCategory
from src.core.geodesics import canonical_geodesic
from src.core.group_parsers import parse_group_spec, parse_word
from src.core.image_checks import (
    companion_connectivity_check,
    companion_length_check,
    image_backtracking_check,
    image_component_check,
    image_endpoint_check,
    image_quasigeodesic_check,
    inverse_round_trip_check,
    peripheral_edge_pairs,
    peripheral_edges,
)
from src.core.image_path import (
    ImageBuilder,
    companion,
    companion_pair,
    edge_component,
    image_path,
    letter_for,
    shortest_x_word,
)
from src.core.paths import Path, are_connected, is_geodesic, path_from_identity
from src.core.probe_report import ProbeStatus
from src.core.window import DomainWindow, random_elements

A10 = HLetter(0, (1, 0))
WINDOW = DomainWindow(2, 1)


def sample_geodesics(spec, seed, count):
    points = random_elements(spec, WINDOW, seed, 2 * count)
    return [canonical_geodesic(spec, points[2 * n], points[2 * n + 1]) for n in range(count)]


class TestShortestWords:

    def test_declared_letters(self, g1):
        assert shortest_x_word(g1, parse_word(g1, "a^2 t")) == (XLetter("a", 1), XLetter("a", 1), XLetter("t", 1))

    def test_adjoined_letter_used(self, inner_t2):
        spec = inner_t2.spec
        assert shortest_x_word(spec, parse_word(spec, "t^2")) == (ExtraLetter(0, -1),)

    def test_letter_for(self, inner_t2, g1):
        spec = inner_t2.spec
        assert letter_for(spec, parse_word(spec, "t^-1")) == XLetter("t", -1)
        assert letter_for(spec, parse_word(spec, "t^-2")) == ExtraLetter(0, 1)
        with pytest.raises(AutomorphismError):
            letter_for(g1, parse_word(g1, "t^3"))


class TestImagePath:

    def test_x_edge_maps_to_shortest_word(self, conj_ab):
        spec = conj_ab.spec
        image = image_path(conj_ab, path_from_identity(spec, (XLetter("t", 1),)))
        assert len(image.path) == 5
        assert image.path.end == parse_word(spec, "a b t b^-1 a^-1")
        assert image.segments == ((0, 5),)

    def test_h_edge_with_trivial_conjugator(self, phi1):
        image = image_path(phi1, path_from_identity(phi1.spec, (A10,)))
        assert image.path.labels == (HLetter(0, (0, 1)),)
        assert image.companion_index == {0: 0}

    def test_h_edge_with_conjugator(self, inner_t):
        image = image_path(inner_t, path_from_identity(inner_t.spec, (A10,)))
        assert image.path.labels == (XLetter("t", 1), A10, XLetter("t", -1))
        assert image.companion_index == {0: 1}

    def test_h_edge_with_adjoined_conjugator(self, inner_t2):
        image = image_path(inner_t2, path_from_identity(inner_t2.spec, (A10,)))
        assert image.path.labels == (ExtraLetter(0, -1), A10, ExtraLetter(0, 1))

    def test_image_ends_at_image_of_endpoint(self, conj_ab):
        for p in sample_geodesics(conj_ab.spec, 5, 10):
            image = image_path(conj_ab, p)
            assert image.path.start == apply_aut(conj_ab, p.start)
            assert image.path.end == apply_aut(conj_ab, p.end)

    def test_builder_caches_words(self, conj_ab):
        builder = ImageBuilder(conj_ab)
        first = builder.word_for(XLetter("t", 1))
        assert builder.word_for(XLetter("t", 1)) is first


class TestCompanions:

    def test_companion_component(self, inner_t, g1):
        comp = companion(inner_t, path_from_identity(g1, (A10,)), 0)
        assert comp.first_vertex == parse_word(g1, "t")
        assert comp.element() == parse_word(g1, "a")

    def test_companion_pair_lives_on_phi_spec(self, inner_t2, g1):
        edge, partner = companion_pair(inner_t2, path_from_identity(g1, (A10,)), 0)
        assert edge.path.spec == inner_t2.spec
        assert partner.path.spec == inner_t2.spec
        assert not are_connected(edge, partner)

    def test_fixed_edge_is_its_own_companion(self, conj_ab, g1):
        edge, partner = companion_pair(conj_ab, path_from_identity(g1, (A10,)), 0)
        assert are_connected(edge, partner)

    def test_x_edge_has_no_companion(self, g1):
        with pytest.raises(AutomorphismError) as exc:
            edge_component(path_from_identity(g1, (XLetter("t", 1),)), 0)
        assert exc.value.category == RelfixErrorCategory.X_EDGE_HAS_NO_COMPANION


class TestPeripheralEdgeSamples:

    def test_every_letter_appears(self, g1):
        edges = peripheral_edges(g1, WINDOW, 3, 4)
        assert len(edges) == 8
        assert {e.labels[0] for e in edges} == {
            HLetter(0, (x, y)) for x in (-1, 0, 1) for y in (-1, 0, 1) if (x, y) != (0, 0)
        }

    def test_no_peripherals_no_edges(self):
        assert peripheral_edges(parse_group_spec("free s, t"), WINDOW, 3, 4) == []

    def test_even_pairs_share_a_coset(self, g1):
        pairs = peripheral_edge_pairs(g1, WINDOW, 3, 6)
        assert len(pairs) == 6
        for e, f in pairs[::2]:
            assert are_connected(edge_component(e, 0), edge_component(f, 0))


@pytest.mark.parametrize("name", ["phi1", "conj_ab", "inner_t", "inner_t2"])
class TestImageChecksHold:

    def test_companion_lengths(self, request, name):
        phi = request.getfixturevalue(name)
        report = companion_length_check(phi, peripheral_edges(phi.base_spec, WINDOW, 1, 12))
        assert report.status == ProbeStatus.PASS
        assert report.estimate["max_companion_x_length"] is not None

    def test_companion_connectivity(self, request, name):
        phi = request.getfixturevalue(name)
        report = companion_connectivity_check(phi, peripheral_edge_pairs(phi.base_spec, WINDOW, 2, 10))
        assert report.status == ProbeStatus.PASS
        assert report.counts["connected"] >= 1

    def test_geodesic_images(self, request, name):
        phi = request.getfixturevalue(name)
        geodesics = sample_geodesics(phi.base_spec, 9, 15)
        assert all(is_geodesic(p) for p in geodesics)
        for report in (
            image_backtracking_check(phi, geodesics),
            image_quasigeodesic_check(phi, geodesics, 1, 0),
            image_component_check(phi, geodesics),
            image_endpoint_check(phi, geodesics),
        ):
            assert report.status != ProbeStatus.FAIL, report.violations

    def test_inverse_round_trip(self, request, name):
        phi = request.getfixturevalue(name)
        report = inverse_round_trip_check(phi, random_elements(phi.base_spec, WINDOW, 4, 20))
        assert report.status == ProbeStatus.PASS, report.violations
        assert report.samples == 20


class TestImageCheckSkips:

    def test_backtracking_input_is_skipped(self, phi1, g1):
        p = Path(g1, IDENTITY, (A10, XLetter("t", 1), XLetter("t", -1), HLetter(0, (0, 1))))
        report = image_backtracking_check(phi1, [p])
        assert report.skipped == 1
        assert report.status == ProbeStatus.VACUOUS
