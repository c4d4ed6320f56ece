"""
Word metrics d_X and d_{X u H}.

Both metrics have closed forms on a free product of abelian factors: a
geodesic passes through every syllable prefix, so lengths add up over
syllables. A peripheral syllable costs one H-edge in the relative metric;
every other syllable costs its minimal spelling in factor generators. Once
conjugators that are not already declared letters are adjoined to X, both
metrics are computed over the enlarged X by a capped bidirectional BFS
instead.
"""

import logging
from collections import deque
from functools import lru_cache
from typing import Optional

from src.core.elements import IDENTITY, ExtraLetter, FactorElement, HLetter, Letter, NormalForm, XLetter
from src.core.errors import RadiusCapExceeded
from src.core.group_spec import GroupSpec
from src.core.normal_form import invert, letter_element, multiply
from src.core.window import DomainWindow, factor_syllables, in_window

log = logging.getLogger(__name__)

DEFAULT_RADIUS_CAP = 8
LENGTH_MEMO_SIZE = 1 << 16


def syllable_x_length(spec: GroupSpec, syllable: FactorElement) -> int:
    """Minimal spelling length of a syllable in its factor's generators."""
    return sum(spec.factors[syllable.factor].coordinate_magnitudes(syllable.coordinates))


def closed_form_x_length(spec: GroupSpec, g: NormalForm) -> int:
    return sum(syllable_x_length(spec, s) for s in g.syllables)


def closed_form_rel_length(spec: GroupSpec, g: NormalForm) -> int:
    return sum(
        1 if spec.is_peripheral(s.factor) else syllable_x_length(spec, s)
        for s in g.syllables
    )


def extras_are_declared_letters(spec: GroupSpec) -> bool:
    """True when every adjoined conjugator is already a declared generator or its inverse."""
    return all(closed_form_x_length(spec, f) <= 1 for f in spec.extra_x_elements)


def extras_shorten_relative(spec: GroupSpec) -> bool:
    """True when some adjoined conjugator spans more than one relative edge."""
    return any(closed_form_rel_length(spec, f) > 1 for f in spec.extra_x_elements)


def x_letters(spec: GroupSpec) -> tuple[Letter, ...]:
    letters: list[Letter] = []
    for name in spec.generator_names:
        letters.append(XLetter(name, 1))
        letters.append(XLetter(name, -1))
    for i in range(len(spec.extra_x_elements)):
        letters.append(ExtraLetter(i, 1))
        letters.append(ExtraLetter(i, -1))
    return tuple(letters)


def candidate_h_letters(spec: GroupSpec, g: NormalForm, extra_letters: int) -> tuple[HLetter, ...]:
    """
    H-letters that can occur in a shortest word for g using at most
    `extra_letters` adjoined conjugators.

    An H-letter of a shortest word never merges with another H-letter or an
    X-letter of its factor, so it is a syllable of g (or 0) minus a sum of
    the conjugators' syllables it merges with.
    """
    letters: list[HLetter] = []
    for i in spec.peripheral_indices:
        factor = spec.factors[i]
        zero = tuple(0 for _ in factor.moduli)
        pieces = {s.coordinates for f in spec.extra_x_elements for s in f.syllables if s.factor == i}
        pieces |= {factor.negate(p) for p in pieces}
        offsets = {zero}
        for _ in range(max(extra_letters, 0)):
            grown = offsets | {factor.add(o, p) for o in offsets for p in pieces}
            if grown == offsets:
                break
            offsets = grown
        targets = {zero} | {s.coordinates for s in g.syllables if s.factor == i}
        vectors = set()
        for target in targets:
            for offset in offsets:
                v = factor.add(target, factor.negate(offset))
                if any(v):
                    vectors.add(v)
                    vectors.add(factor.negate(v))
        letters.extend(HLetter(i, v) for v in sorted(vectors))
    return tuple(letters)


def relative_letters(spec: GroupSpec, g: NormalForm, extra_letters: int) -> tuple[Letter, ...]:
    """X letters plus the candidate H-letters for words ending at g."""
    return x_letters(spec) + candidate_h_letters(spec, g, extra_letters)


def rel_length(spec: GroupSpec, g: NormalForm, radius_cap: int = DEFAULT_RADIUS_CAP) -> int:
    """
    |g| in X u H.

    Raises RadiusCapExceeded when an adjoined conjugator forces a search
    that cannot be certified within the cap.
    """
    upper = closed_form_rel_length(spec, g)
    if upper <= 1 or not extras_shorten_relative(spec):
        return upper
    return _searched_rel_length(spec, g, radius_cap)


def rel_distance(spec: GroupSpec, g: NormalForm, h: NormalForm, radius_cap: int = DEFAULT_RADIUS_CAP) -> int:
    return rel_length(spec, multiply(spec, invert(spec, g), h), radius_cap)


def x_length(spec: GroupSpec, g: NormalForm, radius_cap: int = DEFAULT_RADIUS_CAP) -> int:
    """
    |g|_X over declared generators and extra_x_elements.

    Raises RadiusCapExceeded when the answer cannot be certified within the
    cap; never returns an approximation.
    """
    upper = closed_form_x_length(spec, g)
    if extras_are_declared_letters(spec) or upper <= 1:
        return upper
    return _searched_x_length(spec, g, radius_cap)


def x_distance(spec: GroupSpec, g: NormalForm, h: NormalForm, radius_cap: int = DEFAULT_RADIUS_CAP) -> int:
    return x_length(spec, multiply(spec, invert(spec, g), h), radius_cap)


def extras_are_syllables(spec: GroupSpec) -> bool:
    """Every adjoined conjugator lies in a single factor, so lengths still add over syllables."""
    return all(len(f.syllables) == 1 for f in spec.extra_x_elements)


def _factor_steps(spec: GroupSpec, factor_index: int) -> list[NormalForm]:
    steps = []
    for x in x_letters(spec):
        element = letter_element(spec, x)
        if element.syllables[0].factor == factor_index:
            steps.append(element)
    return steps


@lru_cache(maxsize=LENGTH_MEMO_SIZE)
def _searched_syllable_length(spec: GroupSpec, syllable: FactorElement, radius_cap: int) -> int:
    target = NormalForm((syllable,))
    steps = _factor_steps(spec, syllable.factor)
    return _bidirectional_search(spec, target, syllable_x_length(spec, syllable), radius_cap, steps, "syllable length")


@lru_cache(maxsize=LENGTH_MEMO_SIZE)
def _searched_x_length(spec: GroupSpec, g: NormalForm, radius_cap: int) -> int:
    if extras_are_syllables(spec):
        return sum(_searched_syllable_length(spec, s, radius_cap) for s in g.syllables)
    steps = [letter_element(spec, x) for x in x_letters(spec)]
    return _bidirectional_search(spec, g, closed_form_x_length(spec, g), radius_cap, steps, "x_length")


@lru_cache(maxsize=LENGTH_MEMO_SIZE)
def _searched_rel_length(spec: GroupSpec, g: NormalForm, radius_cap: int) -> int:
    if extras_are_syllables(spec):
        return sum(
            1 if spec.is_peripheral(s.factor) else _searched_syllable_length(spec, s, radius_cap)
            for s in g.syllables
        )
    upper = closed_form_rel_length(spec, g)
    shorter = min(upper - 1, radius_cap)
    letters = relative_letters(spec, g, shorter - 1)
    steps = sorted({letter_element(spec, x) for x in letters}, key=NormalForm.sort_key)
    return _bidirectional_search(spec, g, upper, radius_cap, steps, "rel_length")


def _bidirectional_search(
    spec: GroupSpec,
    target: NormalForm,
    upper: int,
    radius_cap: int,
    steps: list[NormalForm],
    metric: str,
) -> int:
    """
    Exact word length of target over `steps` given a closed-form upper bound.

    `steps` must be closed under inversion. Full BFS layers alternate between
    the two ends; the first layer that closes a path certifies the minimum.
    If no path shorter than `upper` exists within the cap the upper bound is
    exact.
    """
    limit = upper - 1
    if limit > radius_cap:
        limit = radius_cap
    forward = {IDENTITY: 0}
    backward = {target: 0}
    forward_layer = [IDENTITY]
    backward_layer = [target]
    depth_f = depth_b = 0
    while depth_f + depth_b < limit:
        expand_forward = len(forward_layer) <= len(backward_layer)
        layer = forward_layer if expand_forward else backward_layer
        seen = forward if expand_forward else backward
        other = backward if expand_forward else forward
        depth = (depth_f if expand_forward else depth_b) + 1
        best: Optional[int] = None
        next_layer = []
        for v in layer:
            for step in steps:
                w = multiply(spec, v, step)
                if w in seen:
                    continue
                seen[w] = depth
                next_layer.append(w)
                if w in other:
                    total = depth + other[w]
                    best = total if best is None else min(best, total)
        if expand_forward:
            forward_layer, depth_f = next_layer, depth
        else:
            backward_layer, depth_b = next_layer, depth
        if best is not None and best <= limit:
            return best
        if not next_layer:
            break
    if upper - 1 <= radius_cap:
        return upper
    log.warning("%s radius cap %d exhausted (closed-form bound %d)", metric, radius_cap, upper)
    raise RadiusCapExceeded(radius_cap)


def clear_length_memos() -> None:
    _searched_syllable_length.cache_clear()
    _searched_x_length.cache_clear()
    _searched_rel_length.cache_clear()


def window_steps(spec: GroupSpec, window: DomainWindow, relative: bool) -> list[NormalForm]:
    """Generators of the restricted Cayley graph: X letters and (relative) window H-letters."""
    steps = {letter_element(spec, x) for x in x_letters(spec)}
    if relative:
        for i in spec.peripheral_indices:
            for syllable in factor_syllables(spec, i, window.max_factor_length):
                steps.add(letter_element(spec, HLetter(i, syllable.coordinates)))
    return sorted(steps, key=NormalForm.sort_key)


def restricted_bfs_distances(spec: GroupSpec, window: DomainWindow, relative: bool) -> dict[NormalForm, int]:
    """
    Distances from 1 in the Cayley graph restricted to window vertices.

    With relative=True the steps are X letters plus the window's H-letters;
    this is the oracle the closed-form metrics are checked against.
    """
    steps = window_steps(spec, window, relative)
    distances = {IDENTITY: 0}
    queue = deque([IDENTITY])
    while queue:
        v = queue.popleft()
        for step in steps:
            w = multiply(spec, v, step)
            if w in distances or not in_window(spec, window, w):
                continue
            distances[w] = distances[v] + 1
            queue.append(w)
    return distances
