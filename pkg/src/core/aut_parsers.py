"""
Text boundary parser for automorphism blocks.

    aut NAME { x -> word; y -> word; ... ; inverse { x -> word; ... } }

Every generator needs a forward and an inverse image; the parsed map is
handed to build_automorphism() which proves it is an automorphism
respecting the peripheral structure.
"""

from src.core.automorphism import Automorphism, build_automorphism
from src.core.elements import NormalForm
from src.core.errors import (
    AutomorphismError,
    GroupSpecSyntaxError,
    RelfixErrorCategory,
    WordError,
)
from src.core.group_parsers import GroupDocument, TokenStream, read_word_letters, tokenize
from src.core.group_spec import GroupSpec
from src.core.metrics import DEFAULT_RADIUS_CAP
from src.core.normal_form import normal_form


def _image_entries(stream: TokenStream, spec: GroupSpec, images: dict[str, NormalForm], allow_inverse: bool):
    """Parse `x -> word` entries up to the closing brace; returns the inverse block if any."""
    inverse = None
    while not stream.at("}"):
        token = stream.expect_name()
        if token.text == "inverse" and allow_inverse and stream.at("{"):
            stream.advance()
            inverse = {}
            _image_entries(stream, spec, inverse, allow_inverse=False)
            stream.expect("}")
        else:
            stream.expect("->")
            if token.text in images:
                raise AutomorphismError(
                    f"generator {token.text!r} given two images", RelfixErrorCategory.DUPLICATE_NAME
                )
            letters = read_word_letters(stream, stop=(";", "}"))
            for letter in letters:
                if letter.generator not in spec.generator_index:
                    raise WordError(
                        f"Unknown generator {letter.generator!r}",
                        RelfixErrorCategory.UNKNOWN_GENERATOR,
                    )
            images[token.text] = normal_form(spec, letters)
        if stream.at(";"):
            stream.advance()
        elif not stream.at("}"):
            token = stream.peek()
            raise GroupSpecSyntaxError(f"Expected ';' or '}}', got {token.text!r}", token.position)
    return inverse


def parse_automorphism(text: str, spec: GroupSpec, radius_cap: int = DEFAULT_RADIUS_CAP) -> Automorphism:
    stream = TokenStream(tokenize(text))
    stream.expect("aut")
    name = stream.expect_name().text
    stream.expect("{")
    forward: dict[str, NormalForm] = {}
    backward = _image_entries(stream, spec, forward, allow_inverse=True)
    stream.expect("}")
    if stream.peek().kind != "end":
        token = stream.peek()
        raise GroupSpecSyntaxError(f"Unexpected {token.text!r} after automorphism block", token.position)
    if backward is None:
        raise AutomorphismError(
            f"automorphism {name} has no inverse block", RelfixErrorCategory.AUTOMORPHISM_INCOMPLETE
        )
    return build_automorphism(name, spec, forward, backward, radius_cap)


def load_automorphism(document: GroupDocument, name: str, radius_cap: int = DEFAULT_RADIUS_CAP) -> Automorphism:
    if name not in document.automorphism_sources:
        raise AutomorphismError(
            f"No automorphism named {name!r}; known: {document.automorphism_names()}",
            RelfixErrorCategory.UNKNOWN_AUTOMORPHISM,
        )
    return parse_automorphism(document.automorphism_sources[name], document.spec, radius_cap)
