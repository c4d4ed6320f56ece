"""
Domain windows: the finite regions every enumeration is restricted to.

A window (R_syl, R_x) holds the elements with at most R_syl syllables whose
coordinates all have magnitude at most R_x (torsion coordinates measured as
min(c, d - c)). Windows are closed under inversion.
"""

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from src.core.elements import IDENTITY, FactorElement, NormalForm
from src.core.group_spec import GroupSpec


@dataclass(frozen=True, order=True)
class DomainWindow:
    max_syllables: int
    max_factor_length: int

    def __post_init__(self):
        for name in ("max_syllables", "max_factor_length"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"DomainWindow.{name} must be int, got {type(value).__name__}")
            if value < 0:
                raise ValueError(f"DomainWindow.{name} must be >= 0, got {value}")

    def label(self) -> str:
        return f"({self.max_syllables},{self.max_factor_length})"


def syllable_magnitude(spec: GroupSpec, syllable: FactorElement) -> int:
    return max(spec.factors[syllable.factor].coordinate_magnitudes(syllable.coordinates))


def in_window(spec: GroupSpec, window: DomainWindow, g: NormalForm) -> bool:
    if len(g.syllables) > window.max_syllables:
        return False
    return all(syllable_magnitude(spec, s) <= window.max_factor_length for s in g.syllables)


def _coordinate_range(modulus: int, bound: int) -> list[int]:
    if modulus == 0:
        return list(range(-bound, bound + 1))
    return sorted({c % modulus for c in range(-bound, bound + 1)}, key=lambda c: (min(c, modulus - c), c))


@lru_cache(maxsize=None)
def factor_syllables(spec: GroupSpec, factor_index: int, bound: int) -> tuple[FactorElement, ...]:
    """All nonzero syllables of one factor with magnitude <= bound."""
    factor = spec.factors[factor_index]
    ranges = [_coordinate_range(m, bound) for m in factor.moduli]
    return tuple(
        FactorElement(factor_index, coords)
        for coords in itertools.product(*ranges)
        if any(coords)
    )


def enumerate_domain(spec: GroupSpec, window: DomainWindow) -> Iterator[NormalForm]:
    """Every element of the window exactly once, by syllable count then factor order."""
    yield IDENTITY
    per_factor = [
        factor_syllables(spec, i, window.max_factor_length) for i in range(len(spec.factors))
    ]

    def extend(prefix: tuple, remaining: int) -> Iterator[NormalForm]:
        if remaining == 0:
            yield NormalForm(prefix)
            return
        last = prefix[-1].factor if prefix else None
        for i, choices in enumerate(per_factor):
            if i == last:
                continue
            for syllable in choices:
                yield from extend(prefix + (syllable,), remaining - 1)

    for k in range(1, window.max_syllables + 1):
        yield from extend((), k)


def count_window(spec: GroupSpec, window: DomainWindow) -> int:
    """
    Closed-form window size.

    With n_i nonzero syllables per factor, the number of k-syllable normal
    forms ending in factor i obeys c_1[i] = n_i and
    c_k[i] = n_i * sum_{j != i} c_{k-1}[j].
    """
    sizes = [len(factor_syllables(spec, i, window.max_factor_length)) for i in range(len(spec.factors))]
    total = 1
    current = list(sizes)
    for k in range(1, window.max_syllables + 1):
        if k > 1:
            previous_total = sum(current)
            current = [n * (previous_total - c) for n, c in zip(sizes, current)]
        total += sum(current)
    return total


def random_element(spec: GroupSpec, window: DomainWindow, seed: int) -> NormalForm:
    """
    Deterministic per seed.

    Uniform over syllable patterns rather than over elements: the syllable
    count is uniform in [0, R_syl], each factor is uniform among those allowed
    after its predecessor, and each syllable is uniform within its factor.
    """
    rng = random.Random(seed)
    return _draw(spec, window, rng)


def random_elements(spec: GroupSpec, window: DomainWindow, seed: int, count: int) -> list[NormalForm]:
    rng = random.Random(seed)
    return [_draw(spec, window, rng) for _ in range(count)]


def _draw(spec: GroupSpec, window: DomainWindow, rng: random.Random) -> NormalForm:
    usable = [
        i for i in range(len(spec.factors))
        if factor_syllables(spec, i, window.max_factor_length)
    ]
    if not usable or window.max_syllables == 0:
        return IDENTITY
    k = rng.randint(0, window.max_syllables)
    if len(usable) == 1:
        k = min(k, 1)
    syllables = []
    last = None
    for _ in range(k):
        factor = rng.choice([i for i in usable if i != last])
        syllables.append(rng.choice(factor_syllables(spec, factor, window.max_factor_length)))
        last = factor
    return NormalForm(tuple(syllables))
