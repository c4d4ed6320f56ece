"""
Automorphism validation, peripheral correspondence and the constants S and A.
"""

from fractions import Fraction

import pytest

from src.core.aut_parsers import load_automorphism, parse_automorphism
from src.core.automorphism import (
    apply_aut,
    apply_inverse,
    compose,
    inner_automorphism,
    inverse_automorphism,
    peripheral_correspondence,
    quasigeodesic_constant_A,
)
from src.core.elements import IDENTITY
from src.core.errors import AutomorphismError, RadiusCapExceeded, RelfixErrorCategory
from src.core.group_parsers import parse_word
from src.core.window import DomainWindow, enumerate_domain
from tests.conftest import load_document


class TestValidation:

    def test_phi1(self, phi1, g1):
        assert phi1.S == 1
        assert phi1.peripheral_map[0].target == 0
        assert phi1.peripheral_map[0].conjugator == IDENTITY
        assert apply_aut(phi1, parse_word(g1, "a^2 b t")) == parse_word(g1, "a b^2 t^-1")

    def test_conj_ab_has_S_five(self, conj_ab):
        assert conj_ab.S == 5
        assert inverse_automorphism(conj_ab).S == 5

    def test_phi2_swaps_factors(self, phi2):
        assert phi2.S == 1
        assert phi2.peripheral_map[0].target == 1
        assert phi2.peripheral_map[1].target == 0

    def test_long_conjugator_is_adjoined(self, inner_t2):
        spec = inner_t2.spec
        assert spec.extra_x_elements == (parse_word(spec, "t^-2"),)
        assert inner_t2.peripheral_map[0].conjugator == parse_word(spec, "t^-2")
        assert inner_t2.S == 3

    def test_short_conjugator_is_not_adjoined(self, inner_t, g1):
        assert inner_t.peripheral_map[0].conjugator == parse_word(g1, "t^-1")
        assert inner_t.spec.extra_x_elements == ()

    def test_inverse_undoes_forward(self, conj_ab):
        for g in enumerate_domain(conj_ab.spec, DomainWindow(2, 1)):
            assert apply_inverse(conj_ab, apply_aut(conj_ab, g)) == g


class TestRejection:

    def test_broken_inverse(self):
        document = load_document("broken_aut.grp")
        with pytest.raises(AutomorphismError) as exc:
            load_automorphism(document, "collapse")
        assert exc.value.category == RelfixErrorCategory.INVERSE_FAILED

    def test_unknown_name(self, g1_doc):
        with pytest.raises(AutomorphismError) as exc:
            load_automorphism(g1_doc, "nope")
        assert exc.value.category == RelfixErrorCategory.UNKNOWN_AUTOMORPHISM

    def test_missing_inverse_block(self, g1):
        with pytest.raises(AutomorphismError) as exc:
            parse_automorphism("aut x { a -> a; b -> b; t -> t }", g1)
        assert exc.value.category == RelfixErrorCategory.AUTOMORPHISM_INCOMPLETE

    def test_missing_generator_image(self, g1):
        text = "aut x { a -> a; t -> t; inverse { a -> a; b -> b; t -> t } }"
        with pytest.raises(AutomorphismError) as exc:
            parse_automorphism(text, g1)
        assert exc.value.category == RelfixErrorCategory.AUTOMORPHISM_INCOMPLETE

    def test_non_commuting_images(self, g1):
        text = "aut x { a -> a; b -> t; t -> b; inverse { a -> a; b -> t; t -> b } }"
        with pytest.raises(AutomorphismError) as exc:
            parse_automorphism(text, g1)
        assert exc.value.category == RelfixErrorCategory.NOT_A_HOMOMORPHISM

    def test_duplicate_image(self, g1):
        text = "aut x { a -> a; a -> b; b -> b; t -> t; inverse { a -> a; b -> b; t -> t } }"
        with pytest.raises(AutomorphismError) as exc:
            parse_automorphism(text, g1)
        assert exc.value.category == RelfixErrorCategory.DUPLICATE_NAME


class TestPeripheralCorrespondence:

    def test_image_outside_peripherals(self, g1):
        images = {"a": parse_word(g1, "t"), "b": parse_word(g1, "t"), "t": parse_word(g1, "t")}
        with pytest.raises(AutomorphismError) as exc:
            peripheral_correspondence(g1, images, 0)
        assert exc.value.category == RelfixErrorCategory.PERIPHERAL_NOT_RESPECTED

    def test_no_common_conjugator(self, g1):
        images = {"a": parse_word(g1, "t a t^-1"), "b": parse_word(g1, "b"), "t": parse_word(g1, "t")}
        with pytest.raises(AutomorphismError) as exc:
            peripheral_correspondence(g1, images, 0)
        assert exc.value.category == RelfixErrorCategory.NO_COMMON_CONJUGATOR

    def test_images_in_two_factors(self, g2):
        images = {"a": parse_word(g2, "c"), "b": parse_word(g2, "a"), "c": parse_word(g2, "a"), "d": parse_word(g2, "b")}
        with pytest.raises(AutomorphismError) as exc:
            peripheral_correspondence(g2, images, 0)
        assert exc.value.category == RelfixErrorCategory.PERIPHERAL_NOT_RESPECTED

    def test_non_peripheral_factor(self, g1):
        with pytest.raises(AutomorphismError):
            peripheral_correspondence(g1, {}, 1)


class TestDerivedAutomorphisms:

    def test_inner_conjugates(self, g1):
        psi = inner_automorphism(g1, parse_word(g1, "t"))
        assert apply_aut(psi, parse_word(g1, "a")) == parse_word(g1, "t a t^-1")
        assert apply_aut(psi, parse_word(g1, "t")) == parse_word(g1, "t")

    def test_inner_passes_the_radius_cap_through(self, g1):
        g = parse_word(g1, "t a t")
        with pytest.raises(RadiusCapExceeded):
            inner_automorphism(g1, g, radius_cap=1)
        psi = inner_automorphism(g1, g, radius_cap=8)
        assert apply_aut(psi, parse_word(g1, "b")) == parse_word(g1, "t a t b t^-1 a^-1 t^-1")
        assert len(psi.spec.extra_x_elements) == 1

    def test_conj_ab_is_inner_by_ab(self, g1, conj_ab):
        psi = inner_automorphism(g1, parse_word(g1, "a b"))
        for g in enumerate_domain(g1, DomainWindow(2, 1)):
            assert apply_aut(psi, g) == apply_aut(conj_ab, g)

    def test_phi1_is_an_involution(self, phi1):
        square = compose(phi1, phi1)
        for g in enumerate_domain(phi1.spec, DomainWindow(2, 2)):
            assert apply_aut(square, g) == g


class TestConstantA:

    @pytest.mark.parametrize("kappa,c,S,expected", [
        (1, 0, 1, 36),
        (1, 2, 1, 42),
        (1, 0, 5, 660),
        (2, 0, 3, 336),
    ])
    def test_values(self, kappa, c, S, expected):
        assert quasigeodesic_constant_A(kappa, c, S) == expected

    def test_fractions_are_exact(self):
        assert quasigeodesic_constant_A(Fraction(3, 2), 0, 1) == 54

    def test_rejects_bad_constants(self):
        with pytest.raises(ValueError):
            quasigeodesic_constant_A(Fraction(1, 2), 0, 1)
