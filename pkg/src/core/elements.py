"""
Element and letter types for free products of abelian factors.

A group element is stored as its normal form: the alternating list of
nonzero factor syllables. Letters are the edge labels of the relative Cayley
graph: X-letters (declared generators and adjoined conjugators) and H-letters
(nontrivial peripheral elements).
"""

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True, order=True)
class FactorElement:
    """
    A single syllable: a nonzero element of one factor.

    - factor: index into GroupSpec.factors (abelian factors first, then one
      rank-1 factor per free generator)
    - coordinates: integer vector; torsion coordinates reduced into [0, d)
    """
    factor: int
    coordinates: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.coordinates, tuple):
            raise TypeError(
                f"FactorElement.coordinates must be tuple, got {type(self.coordinates).__name__}"
            )
        if all(c == 0 for c in self.coordinates):
            raise ValueError(
                f"FactorElement of factor {self.factor} is zero; the identity is never a syllable"
            )


@dataclass(frozen=True, order=True)
class NormalForm:
    """
    Canonical alternating-syllable form of a group element.

    Invariants: adjacent syllables lie in distinct factors; every syllable is
    nonzero; the empty tuple is the identity.
    """
    syllables: tuple[FactorElement, ...] = ()

    def __post_init__(self):
        if not isinstance(self.syllables, tuple):
            raise TypeError(
                f"NormalForm.syllables must be tuple, got {type(self.syllables).__name__}"
            )
        for left, right in zip(self.syllables, self.syllables[1:]):
            if left.factor == right.factor:
                raise ValueError(
                    f"NormalForm has adjacent syllables in factor {left.factor}"
                )

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def __len__(self) -> int:
        return len(self.syllables)

    def sort_key(self) -> tuple:
        return (len(self.syllables), self.syllables)


IDENTITY = NormalForm(())


@dataclass(frozen=True, order=True)
class XLetter:
    """Declared generator letter, sign +1 or -1."""
    generator: str
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"XLetter sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True, order=True)
class ExtraLetter:
    """Adjoined X element (a peripheral conjugator f_lambda), by index."""
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"ExtraLetter sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True, order=True)
class HLetter:
    """Peripheral letter: a nonzero element of peripheral factor `factor`."""
    factor: int
    vector: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.vector, tuple):
            raise TypeError(f"HLetter.vector must be tuple, got {type(self.vector).__name__}")


Letter = Union[XLetter, ExtraLetter, HLetter]
EdgeLabel = Letter


def is_h_letter(label: Letter) -> bool:
    return isinstance(label, HLetter)


def label_sort_key(label: Letter) -> tuple:
    """Total order across letter kinds: X, then extra, then H."""
    if isinstance(label, XLetter):
        return (0, label.generator, label.sign)
    if isinstance(label, ExtraLetter):
        return (1, label.index, label.sign)
    return (2, label.factor, label.vector)
