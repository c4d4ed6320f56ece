"""
Automorphisms of G given by generator images and an explicit inverse.

Validation proves, per instance, that the map is an automorphism respecting
the peripheral structure: every peripheral factor H_lambda is carried onto
f^-1 H_lambda' f for a single lambda' and a single conjugator f. The
conjugators are then adjoined to X, and S (the largest X-length of a letter
image under phi or phi^-1) is computed over the enlarged X.
"""

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from src.core.elements import IDENTITY, NormalForm
from src.core.errors import AutomorphismError, RelfixErrorCategory
from src.core.group_spec import GroupSpec
from src.core.metrics import DEFAULT_RADIUS_CAP, closed_form_x_length, x_length
from src.core.normal_form import generator_element, invert, multiply, multiply_all, power

log = logging.getLogger(__name__)


def _apply_images(spec: GroupSpec, images: Mapping[str, NormalForm], g: NormalForm) -> NormalForm:
    parts = []
    for syllable in g.syllables:
        factor = spec.factors[syllable.factor]
        for name, c in zip(factor.generator_names, syllable.coordinates):
            if c:
                parts.append(power(spec, images[name], c))
    return multiply_all(spec, parts)


@dataclass(frozen=True)
class PeripheralImage:
    """phi(H_lambda) = f^-1 H_target f."""
    target: int
    conjugator: NormalForm


@dataclass(frozen=True, eq=False)
class Automorphism:
    """
    A validated automorphism.

    base_spec is the group as declared; spec is base_spec with the
    nontrivial conjugators adjoined to X. Use build_automorphism() or
    parse_automorphism(); the constructor does not validate.
    """
    name: str
    base_spec: GroupSpec
    spec: GroupSpec
    forward: Mapping[str, NormalForm]
    backward: Mapping[str, NormalForm]
    peripheral_map: Mapping[int, PeripheralImage]
    S: int
    _syllable_cache: dict = field(default_factory=dict, repr=False)
    _cache_lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def conjugator(self, factor: int) -> NormalForm:
        return self.peripheral_map[factor].conjugator


def apply_aut(phi: Automorphism, g: NormalForm) -> NormalForm:
    """Homomorphic extension of phi.forward, cached per syllable."""
    parts = []
    for syllable in g.syllables:
        with phi._cache_lock:
            image = phi._syllable_cache.get(syllable)
        if image is None:
            image = _apply_images(phi.spec, phi.forward, NormalForm((syllable,)))
            with phi._cache_lock:
                phi._syllable_cache.setdefault(syllable, image)
        parts.append(image)
    return multiply_all(phi.spec, parts)


def apply_inverse(phi: Automorphism, g: NormalForm) -> NormalForm:
    return _apply_images(phi.spec, phi.backward, g)


def _check_complete(spec: GroupSpec, images: Mapping[str, NormalForm], side: str) -> None:
    missing = [g for g in spec.generator_names if g not in images]
    if missing:
        raise AutomorphismError(
            f"{side} images missing for generators {missing}",
            RelfixErrorCategory.AUTOMORPHISM_INCOMPLETE,
        )
    unknown = sorted(g for g in images if g not in spec.generator_index)
    if unknown:
        raise AutomorphismError(
            f"{side} images given for unknown generators {unknown}",
            RelfixErrorCategory.UNKNOWN_GENERATOR,
        )


def check_homomorphism(spec: GroupSpec, images: Mapping[str, NormalForm], side: str = "forward") -> None:
    """Images of each factor's generators commute and respect its torsion."""
    for factor in spec.factors:
        names = factor.generator_names
        for i, x in enumerate(names):
            for y in names[i + 1:]:
                gx, gy = images[x], images[y]
                if multiply(spec, gx, gy) != multiply(spec, gy, gx):
                    raise AutomorphismError(
                        f"{side} images of {x} and {y} do not commute",
                        RelfixErrorCategory.NOT_A_HOMOMORPHISM,
                    )
        for name, modulus in zip(names, factor.moduli):
            if modulus and power(spec, images[name], modulus) != IDENTITY:
                raise AutomorphismError(
                    f"{side} image of {name} does not have order dividing {modulus}",
                    RelfixErrorCategory.NOT_A_HOMOMORPHISM,
                )


def check_inverse(spec: GroupSpec, forward: Mapping[str, NormalForm], backward: Mapping[str, NormalForm]) -> None:
    for name in spec.generator_names:
        x = generator_element(spec, name)
        if _apply_images(spec, backward, _apply_images(spec, forward, x)) != x:
            raise AutomorphismError(
                f"inverse fails on {name}: backward(forward({name})) != {name}",
                RelfixErrorCategory.INVERSE_FAILED,
            )
        if _apply_images(spec, forward, _apply_images(spec, backward, x)) != x:
            raise AutomorphismError(
                f"inverse fails on {name}: forward(backward({name})) != {name}",
                RelfixErrorCategory.INVERSE_FAILED,
            )


def conjugate_shape(spec: GroupSpec, image: NormalForm):
    """
    Split image = f^-1 m f with m a single syllable, f of shortest normal form.

    Returns (middle syllable, f) or None when the image is not conjugate
    into a single free factor.
    """
    n = len(image.syllables)
    if n % 2 == 0:
        return None
    half = n // 2
    f = NormalForm(image.syllables[half + 1:])
    middle = image.syllables[half]
    if multiply_all(spec, (invert(spec, f), NormalForm((middle,)), f)) != image:
        return None
    return middle, f


def peripheral_correspondence(spec: GroupSpec, forward: Mapping[str, NormalForm], factor: int) -> PeripheralImage:
    """
    lambda -> (lambda', f_lambda) read off the images of H_lambda's generators.

    Every generator image must have the shape f^-1 h' f with h' in one
    peripheral factor lambda' and f common to all of them. Since H_lambda'
    is abelian the shortest such f is canonical.
    """
    if not spec.is_peripheral(factor):
        raise AutomorphismError(
            f"Factor {spec.factors[factor].name} is not peripheral",
            RelfixErrorCategory.PERIPHERAL_NOT_RESPECTED,
        )
    found = None
    for name in spec.factors[factor].generator_names:
        shape = conjugate_shape(spec, forward[name])
        if shape is None or not spec.is_peripheral(shape[0].factor):
            raise AutomorphismError(
                f"image of {name} is not conjugate into a peripheral factor",
                RelfixErrorCategory.PERIPHERAL_NOT_RESPECTED,
            )
        middle, f = shape
        candidate = PeripheralImage(middle.factor, f)
        if found is None:
            found = candidate
        elif candidate.target != found.target:
            raise AutomorphismError(
                f"images of {spec.factors[factor].name} land in different peripheral factors",
                RelfixErrorCategory.PERIPHERAL_NOT_RESPECTED,
            )
        elif candidate.conjugator != found.conjugator:
            raise AutomorphismError(
                f"images of {spec.factors[factor].name} have no common conjugator",
                RelfixErrorCategory.NO_COMMON_CONJUGATOR,
            )
    return found


def derive_peripheral_map(spec: GroupSpec, forward: Mapping[str, NormalForm]) -> dict[int, PeripheralImage]:
    mapping = {i: peripheral_correspondence(spec, forward, i) for i in spec.peripheral_indices}
    targets = sorted(image.target for image in mapping.values())
    if targets != sorted(mapping):
        raise AutomorphismError(
            "peripheral correspondence is not a bijection",
            RelfixErrorCategory.PERIPHERAL_NOT_RESPECTED,
        )
    return mapping


def compute_S(phi: Automorphism, radius_cap: int = DEFAULT_RADIUS_CAP) -> int:
    """max over x in X of |phi(x)|_X and |phi^-1(x)|_X."""
    spec = phi.spec
    letters = [generator_element(spec, name) for name in spec.generator_names]
    letters.extend(spec.extra_x_elements)
    best = 1
    for x in letters:
        best = max(
            best,
            x_length(spec, apply_aut(phi, x), radius_cap),
            x_length(spec, apply_inverse(phi, x), radius_cap),
        )
    return best


def build_automorphism(
    name: str,
    spec: GroupSpec,
    forward: Mapping[str, NormalForm],
    backward: Mapping[str, NormalForm],
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> Automorphism:
    """Validate the map and derive peripheral data, the enlarged X and S."""
    base = GroupSpec(abelian_factors=spec.abelian_factors, free_generators=spec.free_generators)
    _check_complete(base, forward, "forward")
    _check_complete(base, backward, "inverse")
    check_homomorphism(base, forward, "forward")
    check_homomorphism(base, backward, "inverse")
    check_inverse(base, forward, backward)
    peripheral_map = derive_peripheral_map(base, forward)
    # conjugators that are already a single declared letter are in X
    adjoined = [
        image.conjugator for _, image in sorted(peripheral_map.items())
        if closed_form_x_length(base, image.conjugator) > 1
    ]
    extended = base.with_extra_x_elements(adjoined)
    phi = Automorphism(
        name=name,
        base_spec=base,
        spec=extended,
        forward=dict(forward),
        backward=dict(backward),
        peripheral_map=peripheral_map,
        S=1,
    )
    S = compute_S(phi, radius_cap)
    object.__setattr__(phi, "S", S)
    log.debug("automorphism %s validated: S=%d, adjoined %d conjugators", name, S, len(adjoined))
    return phi


def inverse_automorphism(phi: Automorphism, radius_cap: int = DEFAULT_RADIUS_CAP) -> Automorphism:
    return build_automorphism(f"{phi.name}^-1", phi.base_spec, phi.backward, phi.forward, radius_cap)


def compose(phi: Automorphism, psi: Automorphism, radius_cap: int = DEFAULT_RADIUS_CAP) -> Automorphism:
    """phi o psi: x -> phi(psi(x))."""
    spec = phi.base_spec
    forward = {
        x: _apply_images(spec, phi.forward, psi.forward[x]) for x in spec.generator_names
    }
    backward = {
        x: _apply_images(spec, psi.backward, phi.backward[x]) for x in spec.generator_names
    }
    return build_automorphism(f"{phi.name}*{psi.name}", spec, forward, backward, radius_cap)


def inner_automorphism(
    spec: GroupSpec, g: NormalForm, name: str = "inner", radius_cap: int = DEFAULT_RADIUS_CAP
) -> Automorphism:
    """x -> g x g^-1."""
    base = GroupSpec(abelian_factors=spec.abelian_factors, free_generators=spec.free_generators)
    g_inv = invert(base, g)
    forward = {}
    backward = {}
    for x in base.generator_names:
        element = generator_element(base, x)
        forward[x] = multiply_all(base, (g, element, g_inv))
        backward[x] = multiply_all(base, (g_inv, element, g))
    return build_automorphism(name, base, forward, backward, radius_cap)


def quasigeodesic_constant_A(kappa, c, S: int) -> Fraction:
    """A = max(S,3) kappa (2S+1)(2S+2) + max(S,3) c."""
    kappa = Fraction(kappa)
    c = Fraction(c)
    if kappa < 1 or c < 0 or S < 1:
        raise ValueError(f"need kappa >= 1, c >= 0, S >= 1; got ({kappa}, {c}, {S})")
    m = max(S, 3)
    return m * kappa * (2 * S + 1) * (2 * S + 2) + m * c
