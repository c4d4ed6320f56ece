"""
Paths in the relative Cayley graph Gamma(G, X u H).

A path is a base vertex plus a label sequence. Components are maximal runs
of H-letters of one peripheral factor; two components are connected when
their vertices share a left coset of that factor.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Union

from src.core.elements import IDENTITY, ExtraLetter, HLetter, Letter, NormalForm, XLetter
from src.core.group_spec import GroupSpec
from src.core.metrics import rel_distance, x_length
from src.core.normal_form import in_factor, invert, letter_element, multiply, multiply_all


@dataclass(frozen=True)
class Path:
    """
    Based edge-labelled walk.

    vertices[i] is the vertex after i edges; vertices[0] = base and
    vertices[-1] = end.
    """
    spec: GroupSpec
    base: NormalForm
    labels: tuple[Letter, ...] = ()

    def __post_init__(self):
        if not isinstance(self.labels, tuple):
            raise TypeError(f"Path.labels must be tuple, got {type(self.labels).__name__}")

    @cached_property
    def vertices(self) -> tuple[NormalForm, ...]:
        current = self.base
        out = [current]
        for label in self.labels:
            current = multiply(self.spec, current, letter_element(self.spec, label))
            out.append(current)
        return tuple(out)

    @property
    def start(self) -> NormalForm:
        return self.base

    @property
    def end(self) -> NormalForm:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.labels)

    def subpath(self, i: int, j: int) -> "Path":
        """Edges i..j-1, based at vertex i."""
        return Path(self.spec, self.vertices[i], self.labels[i:j])

    def concat(self, other: "Path") -> "Path":
        if other.base != self.end:
            raise ValueError("Cannot concatenate paths with mismatched endpoints")
        return Path(self.spec, self.base, self.labels + other.labels)

    def translate(self, g: NormalForm) -> "Path":
        """Left translate by g; labels are unchanged."""
        return Path(self.spec, multiply(self.spec, g, self.base), self.labels)

    def reverse(self) -> "Path":
        labels = tuple(_inverse_label(self.spec, label) for label in reversed(self.labels))
        return Path(self.spec, self.end, labels)

    def label_element(self) -> NormalForm:
        return multiply_all(self.spec, (letter_element(self.spec, x) for x in self.labels))


def _inverse_label(spec: GroupSpec, label: Letter) -> Letter:
    if isinstance(label, HLetter):
        return HLetter(label.factor, spec.factors[label.factor].negate(label.vector))
    if isinstance(label, XLetter):
        return XLetter(label.generator, -label.sign)
    return ExtraLetter(label.index, -label.sign)


@dataclass(frozen=True)
class Component:
    """Edges start..end-1 of path, all H-letters of factor `factor`."""
    path: Path
    start: int
    end: int
    factor: int

    def __post_init__(self):
        if not 0 <= self.start < self.end <= len(self.path):
            raise ValueError(f"Component bounds [{self.start}, {self.end}) invalid")

    @property
    def first_vertex(self) -> NormalForm:
        return self.path.vertices[self.start]

    @property
    def last_vertex(self) -> NormalForm:
        return self.path.vertices[self.end]

    @property
    def length(self) -> int:
        return self.end - self.start

    def element(self) -> NormalForm:
        """The label of the component as a group element."""
        return multiply(self.path.spec, invert(self.path.spec, self.first_vertex), self.last_vertex)

    def as_path(self) -> Path:
        return self.path.subpath(self.start, self.end)


def components(p: Path) -> list[Component]:
    out = []
    i = 0
    while i < len(p.labels):
        label = p.labels[i]
        if not isinstance(label, HLetter):
            i += 1
            continue
        j = i + 1
        while j < len(p.labels) and isinstance(p.labels[j], HLetter) and p.labels[j].factor == label.factor:
            j += 1
        out.append(Component(p, i, j, label.factor))
        i = j
    return out


def same_coset(spec: GroupSpec, u: NormalForm, v: NormalForm, factor: int) -> bool:
    """u H = v H for H the free factor `factor`."""
    return in_factor(multiply(spec, invert(spec, u), v), factor)


def are_connected(c1: Component, c2: Component) -> bool:
    if c1.factor != c2.factor:
        return False
    return same_coset(c1.path.spec, c1.first_vertex, c2.first_vertex, c1.factor)


def is_without_backtracking(p: Path) -> bool:
    comps = components(p)
    for i, a in enumerate(comps):
        for b in comps[i + 1:]:
            if are_connected(a, b):
                return False
    return True


Rational = Union[int, Fraction]


def is_quasigeodesic(p: Path, kappa: Rational, c: Rational) -> bool:
    """Every subpath q satisfies l(q) <= kappa * d(q-, q+) + c, exactly."""
    kappa = Fraction(kappa)
    c = Fraction(c)
    if kappa < 1 or c < 0:
        raise ValueError(f"quasigeodesic constants need kappa >= 1, c >= 0; got ({kappa}, {c})")
    vertices = p.vertices
    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            if j - i > kappa * rel_distance(p.spec, vertices[i], vertices[j]) + c:
                return False
    return True


def is_geodesic(p: Path) -> bool:
    return len(p) == rel_distance(p.spec, p.start, p.end)


def phase_vertices(p: Path) -> list[int]:
    """Vertex indices that are not strictly inside a component."""
    interior = set()
    for comp in components(p):
        interior.update(range(comp.start + 1, comp.end))
    return [i for i in range(len(p.vertices)) if i not in interior]


def x_length_of_component(comp: Component, radius_cap: int) -> int:
    return x_length(comp.path.spec, comp.element(), radius_cap)


def path_from_identity(spec: GroupSpec, labels) -> Path:
    return Path(spec, IDENTITY, tuple(labels))


@dataclass(frozen=True)
class Triangle:
    """Geodesic triangle; sides run x->y, y->z, z->x."""
    x: NormalForm
    y: NormalForm
    z: NormalForm
    sides: tuple[Path, Path, Path]

    def __post_init__(self):
        if len(self.sides) != 3:
            raise ValueError(f"Triangle needs three sides, got {len(self.sides)}")
        expected = ((self.x, self.y), (self.y, self.z), (self.z, self.x))
        for k, (side, (a, b)) in enumerate(zip(self.sides, expected)):
            if side.start != a or side.end != b:
                raise ValueError(f"Triangle side {k} endpoints do not match its vertices")

