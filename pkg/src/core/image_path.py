"""
Images of paths under an automorphism, and companions of H-edges.

An X-edge labelled x maps to a fixed shortest X-word W_x for phi(x). An
H-edge labelled h in H_lambda maps to the three-edge path f^-1, h', f with
phi(h) = f^-1 h' f and f = f_lambda; its middle edge is the companion. When
f_lambda = 1 the image is the single edge h'.
"""

from dataclasses import dataclass

from src.core.automorphism import Automorphism, apply_aut
from src.core.elements import ExtraLetter, HLetter, Letter, NormalForm, XLetter, label_sort_key
from src.core.errors import AutomorphismError, LemmaViolation, RelfixErrorCategory
from src.core.group_spec import GroupSpec
from src.core.metrics import DEFAULT_RADIUS_CAP, x_distance, x_length, x_letters
from src.core.normal_form import generator_element, invert, letter_element, multiply, multiply_all
from src.core.paths import Component, Path


def shortest_x_word(spec: GroupSpec, g: NormalForm, radius_cap: int = DEFAULT_RADIUS_CAP) -> tuple[Letter, ...]:
    """
    Lexicographically least shortest word over X for g.

    Greedy descent: at each step take the least letter that keeps an exact
    shortest continuation.
    """
    letters = sorted(x_letters(spec), key=label_sort_key)
    steps = [(x, letter_element(spec, x)) for x in letters]
    remaining = x_length(spec, g, radius_cap)
    current = NormalForm(())
    word: list[Letter] = []
    while remaining:
        for letter, step in steps:
            candidate = multiply(spec, current, step)
            if x_distance(spec, candidate, g, radius_cap) == remaining - 1:
                word.append(letter)
                current = candidate
                remaining -= 1
                break
        else:
            raise LemmaViolation("no shortest continuation found; x_length is inconsistent")
    return tuple(word)


def letter_for(spec: GroupSpec, element: NormalForm) -> Letter:
    """The X letter whose element is `element` (declared first, then adjoined)."""
    for name in spec.generator_names:
        for sign in (1, -1):
            if generator_element(spec, name, sign) == element:
                return XLetter(name, sign)
    inverse = invert(spec, element)
    for i, extra in enumerate(spec.extra_x_elements):
        if extra == element:
            return ExtraLetter(i, 1)
        if extra == inverse:
            return ExtraLetter(i, -1)
    raise AutomorphismError(
        "conjugator is not a letter of X", RelfixErrorCategory.PERIPHERAL_NOT_RESPECTED
    )


@dataclass(frozen=True)
class ImagePath:
    """
    phi(p) with bookkeeping.

    segments[i] = (start, end) edge range of phi(e_i) inside path;
    companion_index maps each H-edge index of p to its companion's index.
    """
    source: Path
    path: Path
    segments: tuple[tuple[int, int], ...]
    companion_index: dict


class ImageBuilder:
    """Per-automorphism W_x cache."""

    def __init__(self, phi: Automorphism, radius_cap: int = DEFAULT_RADIUS_CAP):
        self.phi = phi
        self.radius_cap = radius_cap
        self._words: dict[Letter, tuple[Letter, ...]] = {}

    def word_for(self, letter: Letter) -> tuple[Letter, ...]:
        if letter not in self._words:
            image = apply_aut(self.phi, letter_element(self.phi.spec, letter))
            self._words[letter] = shortest_x_word(self.phi.spec, image, self.radius_cap)
        return self._words[letter]

    def h_edge_image(self, label: HLetter) -> tuple[tuple[Letter, ...], int]:
        """(labels, offset of the companion within them)."""
        spec = self.phi.spec
        peripheral = self.phi.peripheral_map[label.factor]
        f = peripheral.conjugator
        image = apply_aut(self.phi, letter_element(spec, label))
        middle = multiply_all(spec, (f, image, invert(spec, f)))
        if len(middle.syllables) != 1 or middle.syllables[0].factor != peripheral.target:
            raise LemmaViolation("image of an H-edge is not conjugate into its target factor")
        h_prime = HLetter(peripheral.target, middle.syllables[0].coordinates)
        if f.is_identity:
            return (h_prime,), 0
        return (letter_for(spec, invert(spec, f)), h_prime, letter_for(spec, f)), 1

    def image(self, p: Path) -> ImagePath:
        spec = self.phi.spec
        labels: list[Letter] = []
        segments = []
        companions = {}
        for i, label in enumerate(p.labels):
            start = len(labels)
            if isinstance(label, HLetter):
                part, offset = self.h_edge_image(label)
                companions[i] = start + offset
            else:
                part = self.word_for(label)
            labels.extend(part)
            segments.append((start, len(labels)))
        base = apply_aut(self.phi, p.start)
        return ImagePath(p, Path(spec, base, tuple(labels)), tuple(segments), companions)


def image_path(phi: Automorphism, p: Path, radius_cap: int = DEFAULT_RADIUS_CAP) -> ImagePath:
    return ImageBuilder(phi, radius_cap).image(rebase_path(phi, p))


def rebase_path(phi: Automorphism, p: Path) -> Path:
    """Paths built over the declared group are moved onto phi's enlarged X."""
    if p.spec == phi.spec:
        return p
    return Path(phi.spec, p.base, p.labels)


def edge_component(p: Path, index: int) -> Component:
    label = p.labels[index]
    if not isinstance(label, HLetter):
        raise AutomorphismError(
            f"edge {index} is an X-edge; only H-edges have companions",
            RelfixErrorCategory.X_EDGE_HAS_NO_COMPANION,
        )
    return Component(p, index, index + 1, label.factor)


def companion(phi: Automorphism, p: Path, index: int, radius_cap: int = DEFAULT_RADIUS_CAP) -> Component:
    """The middle H-edge of phi(e) for the H-edge e = p.labels[index], as a one-edge component of phi(p)."""
    edge_component(p, index)
    image = image_path(phi, p, radius_cap)
    return edge_component(image.path, image.companion_index[index])


def companion_pair(phi: Automorphism, p: Path, index: int, radius_cap: int = DEFAULT_RADIUS_CAP) -> tuple[Component, Component]:
    """(e, e_phi) with both edges living on phi's enlarged X."""
    rebased = rebase_path(phi, p)
    return edge_component(rebased, index), companion(phi, rebased, index, radius_cap)


def edge_x_length(component: Component, radius_cap: int = DEFAULT_RADIUS_CAP) -> int:
    return x_length(component.path.spec, component.element(), radius_cap)
