"""
Geodesics and projections in Gamma(G, X u H).

In a free product every geodesic from g to h passes through the syllable
prefixes of g^-1 h, so geodesics are assembled syllable by syllable: one
H-edge per peripheral syllable, a minimal spelling per non-peripheral one.
An adjoined conjugator spanning several relative edges breaks that shape;
geodesics are then found by a depth-first walk that keeps every prefix on a
geodesic.
"""

import itertools
import logging
from collections import Counter
from typing import Iterator

from src.core.elements import IDENTITY, ExtraLetter, FactorElement, HLetter, Letter, NormalForm, XLetter, label_sort_key
from src.core.errors import LabelCapExceeded, LemmaViolation, NotGeodesicError, PreconditionViolation
from src.core.group_spec import GroupSpec
from src.core.metrics import DEFAULT_RADIUS_CAP, extras_shorten_relative, rel_distance, rel_length, relative_letters
from src.core.normal_form import generator_element, invert, letter_element, multiply, syllable_element, word_letters
from src.core.paths import Path, Triangle, is_geodesic, is_quasigeodesic, is_without_backtracking

log = logging.getLogger(__name__)

DEFAULT_LABEL_CAP = 4096


def _syllable_canonical_labels(spec: GroupSpec, syllable: FactorElement) -> tuple[Letter, ...]:
    if spec.is_peripheral(syllable.factor):
        return (HLetter(syllable.factor, syllable.coordinates),)
    return tuple(word_letters(spec, syllable_element(syllable)))


def canonical_geodesic(spec: GroupSpec, g: NormalForm, h: NormalForm, radius_cap: int = DEFAULT_RADIUS_CAP) -> Path:
    difference = multiply(spec, invert(spec, g), h)
    if extras_shorten_relative(spec):
        return Path(spec, g, next(_geodesic_words(spec, difference, radius_cap)))
    labels: list[Letter] = []
    for syllable in difference.syllables:
        labels.extend(_syllable_canonical_labels(spec, syllable))
    return Path(spec, g, tuple(labels))


def _geodesic_words(spec: GroupSpec, target: NormalForm, radius_cap: int) -> Iterator[tuple[Letter, ...]]:
    """Geodesic words from 1 to target in label order; every prefix stays geodesic."""
    length = rel_length(spec, target, radius_cap)
    letters = sorted(relative_letters(spec, target, length - 1), key=label_sort_key)
    steps = [(x, letter_element(spec, x)) for x in letters]
    labels: list[Letter] = []

    def extend(vertex: NormalForm) -> Iterator[tuple[Letter, ...]]:
        remaining = length - len(labels)
        if remaining == 0:
            yield tuple(labels)
            return
        for letter, element in steps:
            following = multiply(spec, vertex, element)
            if rel_distance(spec, following, target, radius_cap) != remaining - 1:
                continue
            labels.append(letter)
            yield from extend(following)
            labels.pop()

    yield from extend(IDENTITY)


def _single_letter_alternatives(spec: GroupSpec, element: NormalForm) -> list[Letter]:
    """X letters (declared or adjoined) whose element is exactly `element`."""
    found: list[Letter] = []
    for name in spec.generator_names:
        for sign in (1, -1):
            if generator_element(spec, name, sign) == element:
                found.append(XLetter(name, sign))
    inverse = invert(spec, element)
    for i, extra in enumerate(spec.extra_x_elements):
        if extra == element:
            found.append(ExtraLetter(i, 1))
        if extra == inverse:
            found.append(ExtraLetter(i, -1))
    return found


def _distinct_orderings(letters: list[Letter]) -> Iterator[tuple[Letter, ...]]:
    counts = Counter(letters)
    keys = sorted(counts, key=label_sort_key)
    total = len(letters)

    def build(prefix: list[Letter]) -> Iterator[tuple[Letter, ...]]:
        if len(prefix) == total:
            yield tuple(prefix)
            return
        for key in keys:
            if counts[key]:
                counts[key] -= 1
                prefix.append(key)
                yield from build(prefix)
                prefix.pop()
                counts[key] += 1

    yield from build([])


def minimal_letter_multisets(spec: GroupSpec, syllable: FactorElement) -> list[list[XLetter]]:
    """Each minimal multiset of generator letters spelling the syllable."""
    factor = spec.factors[syllable.factor]
    per_coordinate: list[list[list[XLetter]]] = []
    for name, c, m in zip(factor.generator_names, syllable.coordinates, factor.moduli):
        if m == 0:
            sign = 1 if c >= 0 else -1
            per_coordinate.append([[XLetter(name, sign)] * abs(c)])
            continue
        up, down = c, m - c
        options = []
        if up <= down:
            options.append([XLetter(name, 1)] * up)
        if down <= up and down != m:
            options.append([XLetter(name, -1)] * down)
        per_coordinate.append(options or [[]])
    return [sum(choice, []) for choice in itertools.product(*per_coordinate)]


def _syllable_labelings(spec: GroupSpec, syllable: FactorElement) -> list[tuple[Letter, ...]]:
    element = syllable_element(syllable)
    if spec.is_peripheral(syllable.factor):
        options: list[tuple[Letter, ...]] = [(HLetter(syllable.factor, syllable.coordinates),)]
        options.extend((x,) for x in _single_letter_alternatives(spec, element))
        return options
    options = []
    for multiset in minimal_letter_multisets(spec, syllable):
        options.extend(_distinct_orderings(multiset))
    return options


def geodesic_labelings(
    spec: GroupSpec,
    g: NormalForm,
    h: NormalForm,
    cap: int = DEFAULT_LABEL_CAP,
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> list[Path]:
    """
    Every geodesic labelling from g to h, deterministic order.

    Raises LabelCapExceeded rather than truncating.
    """
    if cap < 1:
        raise ValueError(f"label cap must be >= 1, got {cap}")
    difference = multiply(spec, invert(spec, g), h)
    if extras_shorten_relative(spec):
        paths = []
        for labels in _geodesic_words(spec, difference, radius_cap):
            if len(paths) == cap:
                raise LabelCapExceeded(cap, cap + 1)
            paths.append(Path(spec, g, labels))
        return paths
    per_syllable = [_syllable_labelings(spec, s) for s in difference.syllables]
    count = 1
    for options in per_syllable:
        count *= len(options)
        if count > cap:
            raise LabelCapExceeded(cap, count)
    paths = []
    for choice in itertools.product(*per_syllable):
        labels = tuple(letter for part in choice for letter in part)
        paths.append(Path(spec, g, labels))
    return paths


def project(spec: GroupSpec, z: NormalForm, line: Path, verify: bool = True) -> list[int]:
    """
    Indices of the vertices of `line` nearest to z in d_{X u H}.

    With verify=True each projection point g is checked: for the split
    line = q r at g and p = canonical_geodesic(z, g), both p q^-1 and p r are
    (3,0)-quasigeodesic without backtracking.
    """
    if not is_geodesic(line):
        raise NotGeodesicError("project() requires a geodesic line")
    distances = [rel_distance(spec, z, v) for v in line.vertices]
    nearest = min(distances)
    indices = [i for i, d in enumerate(distances) if d == nearest]
    if verify:
        for i in indices:
            _check_projection_split(spec, z, line, i)
    return indices


def _check_projection_split(spec: GroupSpec, z: NormalForm, line: Path, i: int) -> None:
    p = canonical_geodesic(spec, z, line.vertices[i])
    back = p.concat(line.subpath(0, i).reverse())
    forward = p.concat(line.subpath(i, len(line)))
    for name, candidate in (("p q^-1", back), ("p r", forward)):
        if not is_quasigeodesic(candidate, 3, 0) or not is_without_backtracking(candidate):
            raise LemmaViolation(
                f"projection split {name} at vertex {i} is not a (3,0)-quasigeodesic "
                f"without backtracking"
            )


def distance_to_path(spec: GroupSpec, u: NormalForm, p: Path) -> int:
    return min(rel_distance(spec, u, v) for v in p.vertices)


def four_k_check(spec: GroupSpec, triangle: Triangle, K: int, u: NormalForm, v: NormalForm) -> bool:
    """
    d(u, v) <= 4K for points K-close to all three sides.

    PreconditionViolation if u or v is farther than K from some side.
    """
    if K < 0:
        raise ValueError(f"K must be >= 0, got {K}")
    for name, point in (("u", u), ("v", v)):
        for k, side in enumerate(triangle.sides):
            if distance_to_path(spec, point, side) > K:
                raise PreconditionViolation(f"{name} is farther than K={K} from side {k}")
    return rel_distance(spec, u, v) <= 4 * K


def geodesic_triangle(spec: GroupSpec, x: NormalForm, y: NormalForm, z: NormalForm) -> Triangle:
    sides = (
        canonical_geodesic(spec, x, y),
        canonical_geodesic(spec, y, z),
        canonical_geodesic(spec, z, x),
    )
    return Triangle(x, y, z, sides)
