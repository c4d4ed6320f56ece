"""
Normal form arithmetic against the one-step rewriting oracle.
"""

from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.elements import IDENTITY, ExtraLetter, FactorElement, HLetter, NormalForm, XLetter
from src.core.group_parsers import parse_group_spec, parse_word
from src.core.normal_form import (
    conjugate,
    format_label,
    format_normal_form,
    invert,
    multiply,
    normal_form,
    power,
    rewrite_to_fixed_point,
    word_letters,
)

G1 = parse_group_spec("factor A { abelian; gens a, b } free t")
TORSION = parse_group_spec("factor A { abelian; gens a, b } factor C { abelian; gens x, y; torsion 4 } free s")


def words(spec):
    letter = st.builds(XLetter, st.sampled_from(spec.generator_names), st.sampled_from([1, -1]))
    return st.lists(letter, max_size=14)


class TestNormalFormOracle:

    @settings(max_examples=200, derandomize=True)
    @given(words(G1))
    def test_stack_pass_matches_rewriting_g1(self, word):
        """Single-pass reduction equals the rewriting fixed point."""
        assert normal_form(G1, word) == rewrite_to_fixed_point(G1, word)

    @settings(max_examples=200, derandomize=True)
    @given(words(TORSION))
    def test_stack_pass_matches_rewriting_with_torsion(self, word):
        assert normal_form(TORSION, word) == rewrite_to_fixed_point(TORSION, word)

    @settings(max_examples=100, derandomize=True)
    @given(words(TORSION))
    def test_word_letters_spell_the_element(self, word):
        g = normal_form(TORSION, word)
        assert normal_form(TORSION, word_letters(TORSION, g)) == g


class TestGroupOperations:

    @settings(max_examples=100, derandomize=True)
    @given(words(G1), words(G1), words(G1))
    def test_multiplication_is_associative(self, u, v, w):
        g, h, k = (normal_form(G1, x) for x in (u, v, w))
        assert multiply(G1, multiply(G1, g, h), k) == multiply(G1, g, multiply(G1, h, k))

    @settings(max_examples=100, derandomize=True)
    @given(words(TORSION))
    def test_inverse(self, word):
        g = normal_form(TORSION, word)
        assert multiply(TORSION, g, invert(TORSION, g)) == IDENTITY
        assert multiply(TORSION, invert(TORSION, g), g) == IDENTITY

    def test_torsion_coordinates_reduced(self):
        g = parse_word(TORSION, "y^5")
        assert g.syllables == (FactorElement(1, (0, 1)),)
        assert parse_word(TORSION, "y^4") == IDENTITY

    def test_syllables_of_one_factor_merge(self):
        g = parse_word(G1, "a t t^-1 b")
        assert g.syllables == (FactorElement(0, (1, 1)),)

    def test_power_and_conjugate(self):
        ab = parse_word(G1, "a b")
        assert power(G1, ab, 3) == parse_word(G1, "a^3 b^3")
        assert power(G1, ab, -2) == parse_word(G1, "a^-2 b^-2")
        t = parse_word(G1, "t")
        assert conjugate(G1, ab, t) == parse_word(G1, "t a b t^-1")


class TestFormatting:

    def test_format_normal_form(self):
        assert format_normal_form(G1, parse_word(G1, "b a^2 t^-3 a")) == "a^2 b t^-3 a"
        assert format_normal_form(G1, IDENTITY) == "1"

    def test_format_round_trips_through_parser(self):
        g = parse_word(TORSION, "a^-2 b y^3 s x")
        assert parse_word(TORSION, format_normal_form(TORSION, g)) == g

    def test_format_label(self):
        assert format_label(G1, XLetter("t", 1)) == "t"
        assert format_label(G1, XLetter("t", -1)) == "t^-1"
        assert format_label(G1, ExtraLetter(0, -1)) == "f0^-1"
        assert format_label(G1, HLetter(0, (1, 1))) == "A(1,1)"

    def test_normal_form_of_h_letters(self):
        assert normal_form(G1, [HLetter(0, (1, 0)), HLetter(0, (0, 1))]) == NormalForm((FactorElement(0, (1, 1)),))
