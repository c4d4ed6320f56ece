"""
Free-product arithmetic on normal forms.

normal_form() reduces a word with a single left-to-right stack pass;
rewrite_to_fixed_point() is an independent one-step rewriting system (delete a
zero syllable, merge two adjacent syllables of one factor) run until no rule
applies. The two must agree on every word; tests use the latter as the oracle.
"""

from typing import Iterable, Optional, Sequence

from src.core.elements import (
    IDENTITY,
    ExtraLetter,
    FactorElement,
    HLetter,
    Letter,
    NormalForm,
    XLetter,
)
from src.core.errors import RelfixErrorCategory, WordError
from src.core.group_spec import GroupSpec


def _push(spec: GroupSpec, stack: list, syllable: FactorElement) -> None:
    if stack and stack[-1].factor == syllable.factor:
        factor = spec.factors[syllable.factor]
        merged = factor.add(stack[-1].coordinates, syllable.coordinates)
        stack.pop()
        if any(merged):
            stack.append(FactorElement(syllable.factor, merged))
    else:
        stack.append(syllable)


def generator_element(spec: GroupSpec, name: str, sign: int = 1) -> NormalForm:
    if name not in spec.generator_index:
        raise WordError(f"Unknown generator {name!r}", RelfixErrorCategory.UNKNOWN_GENERATOR)
    i, j = spec.generator_index[name]
    factor = spec.factors[i]
    vector = [0] * factor.dimension
    vector[j] = sign
    coordinates = factor.reduce(tuple(vector))
    return NormalForm((FactorElement(i, coordinates),))


def peripheral_element(spec: GroupSpec, factor_index: int, vector: Sequence[int]) -> NormalForm:
    if not 0 <= factor_index < len(spec.factors):
        raise WordError(
            f"Unknown factor index {factor_index}", RelfixErrorCategory.UNKNOWN_GENERATOR
        )
    if not spec.is_peripheral(factor_index):
        raise WordError(
            f"Factor {spec.factors[factor_index].name} is not peripheral; it has no H-letters",
            RelfixErrorCategory.NON_PERIPHERAL_H_LETTER,
        )
    factor = spec.factors[factor_index]
    if len(vector) != factor.dimension:
        raise WordError(
            f"H-letter vector {list(vector)} has wrong length for factor {factor.name}",
            RelfixErrorCategory.UNKNOWN_GENERATOR,
        )
    coordinates = factor.reduce(tuple(vector))
    if not any(coordinates):
        raise WordError(
            f"H-letter of factor {factor.name} has zero vector",
            RelfixErrorCategory.ZERO_PERIPHERAL_LETTER,
        )
    return NormalForm((FactorElement(factor_index, coordinates),))


def letter_element(spec: GroupSpec, letter: Letter) -> NormalForm:
    """The group element labelling an edge."""
    if isinstance(letter, XLetter):
        return generator_element(spec, letter.generator, letter.sign)
    if isinstance(letter, ExtraLetter):
        if not 0 <= letter.index < len(spec.extra_x_elements):
            raise WordError(
                f"Unknown extra X element #{letter.index}", RelfixErrorCategory.UNKNOWN_GENERATOR
            )
        element = spec.extra_x_elements[letter.index]
        return element if letter.sign == 1 else invert(spec, element)
    if isinstance(letter, HLetter):
        return peripheral_element(spec, letter.factor, letter.vector)
    raise TypeError(f"Not a letter: {type(letter).__name__}")


def normal_form(spec: GroupSpec, word: Iterable[Letter]) -> NormalForm:
    """Normal form of the element represented by a word over X and H letters."""
    stack: list[FactorElement] = []
    for letter in word:
        for syllable in letter_element(spec, letter).syllables:
            _push(spec, stack, syllable)
    return NormalForm(tuple(stack))


def multiply(spec: GroupSpec, g: NormalForm, h: NormalForm) -> NormalForm:
    stack = list(g.syllables)
    for syllable in h.syllables:
        _push(spec, stack, syllable)
    return NormalForm(tuple(stack))


def multiply_all(spec: GroupSpec, elements: Iterable[NormalForm]) -> NormalForm:
    stack: list[FactorElement] = []
    for element in elements:
        for syllable in element.syllables:
            _push(spec, stack, syllable)
    return NormalForm(tuple(stack))


def invert(spec: GroupSpec, g: NormalForm) -> NormalForm:
    return NormalForm(tuple(
        FactorElement(s.factor, spec.factors[s.factor].negate(s.coordinates))
        for s in reversed(g.syllables)
    ))


def power(spec: GroupSpec, g: NormalForm, n: int) -> NormalForm:
    if n < 0:
        return power(spec, invert(spec, g), -n)
    result = IDENTITY
    base = g
    while n:
        if n & 1:
            result = multiply(spec, result, base)
        base = multiply(spec, base, base)
        n >>= 1
    return result


def conjugate(spec: GroupSpec, g: NormalForm, by: NormalForm) -> NormalForm:
    """by * g * by^-1"""
    return multiply_all(spec, (by, g, invert(spec, by)))


def syllable_element(syllable: FactorElement) -> NormalForm:
    return NormalForm((syllable,))


def in_factor(g: NormalForm, factor: int) -> bool:
    """Membership in the free factor `factor` (identity included)."""
    return g.is_identity or (len(g.syllables) == 1 and g.syllables[0].factor == factor)


def rewrite_to_fixed_point(spec: GroupSpec, word: Iterable[Letter]) -> NormalForm:
    """
    Rewriting oracle, one rule application per step.

    Rules: (R1) drop a zero syllable; (R2) merge two adjacent syllables of the
    same factor. The system is terminating (each step shortens the list) and
    confluent (factor addition is associative and commutative).
    """
    raw: list[tuple[int, tuple[int, ...]]] = []
    for letter in word:
        for syllable in letter_element(spec, letter).syllables:
            raw.append((syllable.factor, syllable.coordinates))

    while True:
        step = _rewrite_once(spec, raw)
        if step is None:
            break
        raw = step
    return NormalForm(tuple(FactorElement(f, c) for f, c in raw))


def _rewrite_once(spec: GroupSpec, raw: list) -> Optional[list]:
    for i, (_, coordinates) in enumerate(raw):
        if not any(coordinates):
            return raw[:i] + raw[i + 1:]
    for i in range(len(raw) - 1):
        (f, u), (g, v) = raw[i], raw[i + 1]
        if f == g:
            merged = tuple(a + b for a, b in zip(u, v))
            return raw[:i] + [(f, spec.factors[f].reduce(merged))] + raw[i + 2:]
    return None


def format_syllable(spec: GroupSpec, syllable: FactorElement) -> str:
    factor = spec.factors[syllable.factor]
    tokens = []
    for name, c in zip(factor.generator_names, syllable.coordinates):
        if c == 0:
            continue
        tokens.append(name if c == 1 else f"{name}^{c}")
    return " ".join(tokens)


def format_normal_form(spec: GroupSpec, g: NormalForm) -> str:
    """Word syntax rendering; the identity prints as "1"."""
    if g.is_identity:
        return "1"
    return " ".join(format_syllable(spec, s) for s in g.syllables)


def word_letters(spec: GroupSpec, g: NormalForm) -> list[XLetter]:
    """A word in declared generators spelling g syllable by syllable."""
    letters: list[XLetter] = []
    for syllable in g.syllables:
        factor = spec.factors[syllable.factor]
        for name, c, m in zip(factor.generator_names, syllable.coordinates, factor.moduli):
            if m and c > m - c:
                letters.extend([XLetter(name, -1)] * (m - c))
            else:
                sign = 1 if c >= 0 else -1
                letters.extend([XLetter(name, sign)] * abs(c))
    return letters


def format_label(spec: GroupSpec, label: Letter) -> str:
    """Edge label rendering: "t", "t^-1", "f0^-1" for adjoined letters, "A(1,1)" for H-letters."""
    if isinstance(label, XLetter):
        return label.generator if label.sign == 1 else f"{label.generator}^-1"
    if isinstance(label, ExtraLetter):
        return f"f{label.index}" if label.sign == 1 else f"f{label.index}^-1"
    vector = ",".join(str(c) for c in label.vector)
    return f"{spec.factors[label.factor].name}({vector})"
