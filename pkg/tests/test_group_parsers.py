"""
Group file parsing: factors, free generators, automorphism blocks and words.
"""

import pytest

from src.core.elements import IDENTITY, FactorElement, NormalForm
from src.core.errors import GroupSpecError, GroupSpecSyntaxError, RelfixErrorCategory, WordError
from src.core.group_parsers import parse_group_document, parse_group_spec, parse_word, parse_word_letters
from src.core.group_spec import group_digest


class TestGroupSpecParsing:

    def test_g1_layout(self, g1):
        """Abelian factors come first, then one rank-1 factor per free generator."""
        assert [f.name for f in g1.factors] == ["A", "t"]
        assert g1.generator_names == ("a", "b", "t")
        assert g1.peripheral_indices == (0,)
        assert not g1.is_peripheral(1)

    def test_g2_two_peripheral_factors(self, g2):
        assert g2.peripheral_indices == (0, 1)
        assert g2.free_generators == ()

    def test_torsion_factor_of_rank_one_is_not_peripheral(self):
        spec = parse_group_spec("factor C { abelian; gens x, y; torsion 3 } free s")
        assert spec.factors[0].rank == 1
        assert spec.factors[0].moduli == (0, 3)
        assert spec.peripheral_indices == ()

    def test_torsion_must_be_divisor_chain(self):
        with pytest.raises(GroupSpecError) as exc:
            parse_group_spec("factor C { abelian; gens x, y, z; torsion 4, 6 }")
        assert exc.value.category == RelfixErrorCategory.TORSION_NOT_DIVISOR_CHAIN

    def test_duplicate_generator_across_factors(self):
        with pytest.raises(GroupSpecError) as exc:
            parse_group_spec("factor A { abelian; gens a, b } free a")
        assert exc.value.category == RelfixErrorCategory.DUPLICATE_NAME

    def test_syntax_error_reports_position(self):
        text = "factor A { abelian gens a }"
        with pytest.raises(GroupSpecSyntaxError) as exc:
            parse_group_spec(text)
        assert exc.value.position == text.index("gens")
        assert "(GROUP: SYNTAX_ERROR)" in str(exc.value)

    def test_unexpected_character(self):
        text = "free t $"
        with pytest.raises(GroupSpecSyntaxError) as exc:
            parse_group_spec(text)
        assert exc.value.position == text.index("$")

    def test_empty_spec_rejected(self):
        with pytest.raises(GroupSpecSyntaxError):
            parse_group_spec("# nothing here\n")

    def test_comments_ignored(self):
        spec = parse_group_spec("# header\nfree t  # trailing\n")
        assert spec.generator_names == ("t",)

    def test_digest_is_stable_and_distinguishes_groups(self, g1, g2):
        assert group_digest(g1) == group_digest(parse_group_spec("factor A { abelian; gens a, b } free t"))
        assert group_digest(g1) != group_digest(g2)
        assert len(group_digest(g1)) == 64


class TestAutomorphismBlocks:

    def test_blocks_cut_out_by_name(self, g1_doc):
        assert g1_doc.automorphism_names() == ["phi1", "inner_t", "conj_ab", "identity", "inner_t2"]
        assert g1_doc.automorphism_sources["phi1"].startswith("aut phi1 {")
        assert g1_doc.automorphism_sources["phi1"].endswith("}")

    def test_duplicate_automorphism_name(self):
        text = "free t\naut x { t -> t; inverse { t -> t } }\naut x { t -> t; inverse { t -> t } }"
        with pytest.raises(GroupSpecError) as exc:
            parse_group_document(text)
        assert exc.value.category == RelfixErrorCategory.DUPLICATE_NAME

    def test_unclosed_block(self):
        with pytest.raises(GroupSpecSyntaxError):
            parse_group_document("free t\naut x { t -> t;")


class TestWordParsing:

    def test_exponents_expand_to_letters(self):
        letters = parse_word_letters("a^2 t^-1")
        assert [(x.generator, x.sign) for x in letters] == [("a", 1), ("a", 1), ("t", -1)]

    def test_word_reduces_to_normal_form(self, g1):
        g = parse_word(g1, "a^2 b^-3 t")
        assert g == NormalForm((FactorElement(0, (2, -3)), FactorElement(1, (1,))))

    def test_identity_word(self, g1):
        assert parse_word(g1, "1") == IDENTITY
        assert parse_word(g1, "t t^-1") == IDENTITY

    def test_unknown_generator(self, g1):
        with pytest.raises(WordError) as exc:
            parse_word(g1, "a q")
        assert exc.value.category == RelfixErrorCategory.UNKNOWN_GENERATOR
