"""
Text boundary parsers for group specs and words.

Grammar:
    spec   := (factor | free)+
    factor := "factor" NAME "{" "abelian" ";" "gens" namelist [";" "torsion" intlist] "}"
    free   := "free" namelist
    word   := (NAME ["^" INT])*        ("1" alone is the identity)

A group file may also hold automorphism blocks ("aut NAME { ... }"); those
are cut out verbatim by parse_group_document() and parsed against the
finished GroupSpec by aut_parsers. "#" starts a comment running to end of line.

Strict posture: no guessing, every syntax error reports the character
position it was detected at.
"""

import re
from dataclasses import dataclass
from typing import Iterator

from src.core.elements import NormalForm, XLetter
from src.core.errors import GroupSpecError, GroupSpecSyntaxError, RelfixErrorCategory, WordError
from src.core.group_spec import AbelianFactor, GroupSpec
from src.core.normal_form import normal_form

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<comment>#[^\n]*)|(?P<arrow>->)|(?P<int>-?\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<punct>[{};,^])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    if not isinstance(text, str):
        raise TypeError(f"source must be str, got {type(text).__name__}")
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise GroupSpecSyntaxError(f"Unexpected character {text[position]!r}", position)
        kind = match.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, match.group(), position))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class TokenStream:
    """Cursor over a token list with expect-style helpers."""

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "end":
            self.index += 1
        return token

    def at(self, text: str) -> bool:
        token = self.peek()
        return token.kind in ("punct", "arrow", "name") and token.text == text

    def expect(self, text: str) -> Token:
        token = self.peek()
        if not self.at(text):
            shown = token.text or "end of input"
            raise GroupSpecSyntaxError(f"Expected {text!r}, got {shown!r}", token.position)
        return self.advance()

    def expect_name(self) -> Token:
        token = self.peek()
        if token.kind != "name":
            shown = token.text or "end of input"
            raise GroupSpecSyntaxError(f"Expected a name, got {shown!r}", token.position)
        return self.advance()

    def expect_int(self) -> int:
        token = self.peek()
        if token.kind != "int":
            shown = token.text or "end of input"
            raise GroupSpecSyntaxError(f"Expected an integer, got {shown!r}", token.position)
        self.advance()
        return int(token.text)


def _namelist(stream: TokenStream) -> list[str]:
    names = [stream.expect_name().text]
    while stream.at(","):
        stream.advance()
        names.append(stream.expect_name().text)
    return names


def _intlist(stream: TokenStream) -> list[int]:
    values = [stream.expect_int()]
    while stream.at(","):
        stream.advance()
        values.append(stream.expect_int())
    return values


def _parse_factor(stream: TokenStream) -> AbelianFactor:
    stream.expect("factor")
    name = stream.expect_name().text
    stream.expect("{")
    stream.expect("abelian")
    stream.expect(";")
    stream.expect("gens")
    gens = _namelist(stream)
    torsion: list[int] = []
    if stream.at(";"):
        stream.advance()
        stream.expect("torsion")
        torsion = _intlist(stream)
    stream.expect("}")
    rank = len(gens) - len(torsion)
    if rank < 0:
        raise GroupSpecError(
            f"Factor {name}: {len(torsion)} torsion entries but only {len(gens)} generators",
            RelfixErrorCategory.FACTOR_INVALID,
        )
    return AbelianFactor(name=name, rank=rank, torsion=tuple(torsion), generator_names=tuple(gens))


def _skip_block(stream: TokenStream) -> Token:
    """Consume a balanced {...} block; returns the closing brace."""
    opening = stream.expect("{")
    depth = 1
    while depth:
        token = stream.advance()
        if token.kind == "end":
            raise GroupSpecSyntaxError("Unclosed '{'", opening.position)
        if token.text == "{":
            depth += 1
        elif token.text == "}":
            depth -= 1
    return token


@dataclass(frozen=True)
class GroupDocument:
    """A parsed group file: the spec plus the raw automorphism blocks by name."""
    spec: GroupSpec
    automorphism_sources: dict

    def automorphism_names(self) -> list[str]:
        return list(self.automorphism_sources)


def parse_group_document(text: str) -> GroupDocument:
    stream = TokenStream(tokenize(text))
    factors: list[AbelianFactor] = []
    free: list[str] = []
    automorphisms: dict[str, str] = {}
    while stream.peek().kind != "end":
        token = stream.peek()
        if stream.at("factor"):
            factors.append(_parse_factor(stream))
        elif stream.at("free"):
            stream.advance()
            free.extend(_namelist(stream))
        elif stream.at("aut"):
            stream.advance()
            name = stream.expect_name().text
            if name in automorphisms:
                raise GroupSpecError(
                    f"Duplicate automorphism name {name!r}", RelfixErrorCategory.DUPLICATE_NAME
                )
            closing = _skip_block(stream)
            automorphisms[name] = text[token.position:closing.position + 1]
        else:
            raise GroupSpecSyntaxError(
                f"Expected 'factor', 'free' or 'aut', got {token.text!r}", token.position
            )
    if not factors and not free:
        raise GroupSpecSyntaxError("Group spec declares no factors", 0)
    spec = GroupSpec(abelian_factors=tuple(factors), free_generators=tuple(free))
    return GroupDocument(spec=spec, automorphism_sources=automorphisms)


def parse_group_spec(text: str) -> GroupSpec:
    """Parse a group spec; automorphism blocks, if present, are ignored."""
    return parse_group_document(text).spec


def _word_tokens(stream: TokenStream, stop: tuple[str, ...]) -> Iterator[XLetter]:
    while stream.peek().kind != "end" and not any(stream.at(s) for s in stop):
        token = stream.peek()
        if token.kind == "int" and token.text == "1":
            stream.advance()
            continue
        name = stream.expect_name().text
        exponent = 1
        if stream.at("^"):
            stream.advance()
            exponent = stream.expect_int()
        sign = 1 if exponent >= 0 else -1
        for _ in range(abs(exponent)):
            yield XLetter(name, sign)


def read_word_letters(stream: TokenStream, stop: tuple[str, ...] = ()) -> list[XLetter]:
    return list(_word_tokens(stream, stop))


def parse_word_letters(text: str) -> list[XLetter]:
    stream = TokenStream(tokenize(text))
    letters = read_word_letters(stream)
    if stream.peek().kind != "end":
        token = stream.peek()
        raise GroupSpecSyntaxError(f"Unexpected {token.text!r} in word", token.position)
    return letters


def parse_word(spec: GroupSpec, text: str) -> NormalForm:
    """Parse word syntax ("a^2 b^-3 t") and reduce to normal form."""
    letters = parse_word_letters(text)
    for letter in letters:
        if letter.generator not in spec.generator_index:
            raise WordError(
                f"Unknown generator {letter.generator!r}", RelfixErrorCategory.UNKNOWN_GENERATOR
            )
    return normal_form(spec, letters)
