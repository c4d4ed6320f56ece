"""
Fix(phi) on a window, and the checks that only need the fixed sample.

Distances to Fix(phi) are measured to the windowed sample, so they are upper
bounds that become exact once the window holds the relevant fixed elements.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from src.core.automorphism import Automorphism, apply_aut, conjugate_shape
from src.core.elements import IDENTITY, NormalForm
from src.core.group_spec import GroupSpec
from src.core.metrics import DEFAULT_RADIUS_CAP, rel_length, x_distance
from src.core.normal_form import format_normal_form, in_factor, invert, multiply, multiply_all
from src.core.probe_report import ProbeReport
from src.core.window import DomainWindow, enumerate_domain, factor_syllables, in_window

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FixedSample:
    """Fixed elements of one window, in enumeration order."""
    automorphism: str
    window: DomainWindow
    elements: tuple[NormalForm, ...]

    def __post_init__(self):
        object.__setattr__(self, "_members", frozenset(self.elements))

    def __contains__(self, g: NormalForm) -> bool:
        return g in self._members

    def __len__(self) -> int:
        return len(self.elements)

    def nontrivial(self) -> tuple[NormalForm, ...]:
        return tuple(g for g in self.elements if not g.is_identity)


def is_fixed(phi: Automorphism, g: NormalForm) -> bool:
    return apply_aut(phi, g) == g


def enumerate_fixed(phi: Automorphism, window: DomainWindow) -> FixedSample:
    elements = tuple(g for g in enumerate_domain(phi.spec, window) if is_fixed(phi, g))
    log.debug("%s: %d fixed elements in window %s", phi.name, len(elements), window.label())
    return FixedSample(phi.name, window, elements)


def centralizer_oracle(spec: GroupSpec, g: NormalForm, window: DomainWindow) -> list[NormalForm]:
    """Window elements commuting with g, by direct multiplication."""
    return [h for h in enumerate_domain(spec, window) if multiply(spec, h, g) == multiply(spec, g, h)]


def distance_to_sample(
    spec: GroupSpec, v: NormalForm, sample: FixedSample, radius_cap: int = DEFAULT_RADIUS_CAP
) -> int:
    if v in sample:
        return 0
    return min(x_distance(spec, v, f, radius_cap) for f in sample.elements)


def fixed_sample_closure_check(spec: GroupSpec, sample: FixedSample) -> ProbeReport:
    """Identity present, closed under inversion, and under products that stay in the window."""
    report = ProbeReport("fixed_closure", params={"window": sample.window.label()})
    report.samples = len(sample)
    if IDENTITY not in sample:
        report.violate(kind="identity_missing")
    for g in sample.elements:
        if invert(spec, g) not in sample:
            report.violate(kind="inverse_missing", element=format_normal_form(spec, g))
        for h in sample.elements:
            product = multiply(spec, g, h)
            if in_window(spec, sample.window, product) and product not in sample:
                report.violate(
                    kind="product_missing",
                    left=format_normal_form(spec, g),
                    right=format_normal_form(spec, h),
                )
    return report


def _generated_closure(spec: GroupSpec, generators: list[NormalForm], window: DomainWindow) -> set[NormalForm]:
    reached = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        next_frontier = []
        for g in frontier:
            for s in generators:
                product = multiply(spec, g, s)
                if product not in reached and in_window(spec, window, product):
                    reached.add(product)
                    next_frontier.append(product)
        frontier = next_frontier
    return reached


def _generates(spec: GroupSpec, sample: FixedSample, P: int) -> bool:
    generators = [g for g in sample.nontrivial() if rel_length(spec, g) <= P]
    closure = _generated_closure(spec, generators, sample.window)
    return all(g in closure for g in sample.elements)


def bounded_generation_check(
    phi: Automorphism, window: DomainWindow, P: int, sample: Optional[FixedSample] = None
) -> ProbeReport:
    """
    Does {g in Fix : |g|_{X u H} <= P} generate the windowed Fix?

    Closure multiplies on the right by generators and keeps products inside
    the window. P_hat is the least P' <= P that already generates.
    """
    if P < 0:
        raise ValueError(f"P must be >= 0, got {P}")
    spec = phi.spec
    sample = sample or enumerate_fixed(phi, window)
    report = ProbeReport("bounded_generation", params={"P": P, "window": window.label()})
    report.declare("P_hat")
    report.samples = len(sample)
    if not _generates(spec, sample, P):
        report.violate(kind="not_generated", P=P)
        return report
    lo, hi = 0, P
    while lo < hi:
        mid = (lo + hi) // 2
        if _generates(spec, sample, mid):
            hi = mid
        else:
            lo = mid + 1
    report.observe("P_hat", lo)
    return report


def _conjugate_key(spec: GroupSpec, factor: int, w: NormalForm) -> tuple[int, NormalForm]:
    """Canonical conjugator for w^-1 H w: drop a leading syllable of H itself."""
    if w.syllables and w.syllables[0].factor == factor:
        w = NormalForm(w.syllables[1:])
    return factor, w


def _key_sort(key: tuple[int, NormalForm]) -> tuple:
    return (len(key[1].syllables), key[0], key[1].syllables)


def peripheral_classes(spec: GroupSpec, sample: FixedSample) -> dict[tuple[int, NormalForm], list[NormalForm]]:
    """Group nontrivial fixed elements by the peripheral conjugate containing them."""
    groups: dict[tuple[int, NormalForm], list[NormalForm]] = {}
    for g in sample.nontrivial():
        shape = conjugate_shape(spec, g)
        if shape is None or not spec.is_peripheral(shape[0].factor):
            continue
        middle, w = shape
        groups.setdefault((middle.factor, w), []).append(g)
    return groups


def _restricted_fixed_set(phi: Automorphism, factor: int, w: NormalForm, window: DomainWindow) -> set[NormalForm]:
    """w^-1 h w in the window with h fixed by psi(h) = w phi(w^-1 h w) w^-1."""
    spec = phi.spec
    w_inv = invert(spec, w)
    out = {IDENTITY}
    for syllable in factor_syllables(spec, factor, window.max_factor_length):
        h = NormalForm((syllable,))
        conjugate = multiply_all(spec, (w_inv, h, w))
        if not in_window(spec, window, conjugate):
            continue
        restricted = multiply_all(spec, (w, apply_aut(phi, conjugate), w_inv))
        if restricted == h:
            out.add(conjugate)
    return out


def induced_peripherals(
    phi: Automorphism,
    window: DomainWindow,
    threshold: Optional[int] = None,
    sample: Optional[FixedSample] = None,
) -> ProbeReport:
    """
    Orbit representatives of the peripheral structure induced on Fix(phi).

    A conjugate w^-1 H w counts as meeting Fix infinitely when the windowed
    intersection has at least `threshold` elements (default 2 * R_syl).
    Classes are merged under conjugation by windowed fixed elements; each
    representative is checked for phi-invariance and for agreeing with the
    fixed set of the restricted automorphism.
    """
    spec = phi.spec
    threshold = 2 * window.max_syllables if threshold is None else threshold
    sample = sample or enumerate_fixed(phi, window)
    report = ProbeReport("induced_peripherals", params={"threshold": threshold, "window": window.label()})
    report.declare("classes")
    report.samples = len(sample)
    groups = peripheral_classes(spec, sample)
    large = sorted(
        (key for key, members in groups.items() if len(members) + 1 >= threshold), key=_key_sort
    )

    parent = {key: key for key in large}

    def find(key):
        while parent[key] != key:
            key = parent[key]
        return key

    for key in large:
        factor, w = key
        for x in sample.nontrivial():
            moved = _conjugate_key(spec, factor, multiply(spec, w, x))
            if moved in parent:
                a, b = find(key), find(moved)
                if a != b:
                    first, second = sorted((a, b), key=_key_sort)
                    parent[second] = first

    representatives = sorted({find(key) for key in large}, key=_key_sort)
    report.observe("classes", len(representatives))
    classes = []
    for factor, w in representatives:
        members = tuple([IDENTITY] + groups[(factor, w)])
        peripheral = phi.peripheral_map[factor]
        image_key = _conjugate_key(spec, peripheral.target, multiply(spec, peripheral.conjugator, apply_aut(phi, w)))
        if image_key != (factor, w):
            report.violate(kind="not_invariant", factor=spec.factors[factor].name, conjugator=format_normal_form(spec, w))
        if _restricted_fixed_set(phi, factor, w, window) != set(members):
            report.violate(kind="restricted_fix_mismatch", factor=spec.factors[factor].name, conjugator=format_normal_form(spec, w))
        classes.append({
            "factor": spec.factors[factor].name,
            "conjugator": format_normal_form(spec, w),
            "size": len(members),
        })
    report.witness = {"classes": classes}
    return report


def peripheral_intersection_check(spec: GroupSpec, window: DomainWindow, conjugators: Optional[Iterable[NormalForm]] = None) -> ProbeReport:
    """
    H_lambda meets g^-1 H_mu g trivially unless lambda = mu and g in H_lambda.

    Free products give trivial intersections, so any nontrivial windowed
    element in an intersection is a violation.
    """
    report = ProbeReport("peripheral_intersection", params={"window": window.label()})
    peripherals = spec.peripheral_indices
    candidates = list(enumerate_domain(spec, window)) if conjugators is None else list(conjugators)
    for g in candidates:
        g_inv = invert(spec, g)
        for lam in peripherals:
            for mu in peripherals:
                if lam == mu and in_factor(g, lam):
                    report.count("excluded")
                    continue
                report.samples += 1
                for syllable in factor_syllables(spec, lam, window.max_factor_length):
                    h = NormalForm((syllable,))
                    if in_factor(multiply_all(spec, (g, h, g_inv)), mu):
                        report.violate(
                            lam=spec.factors[lam].name,
                            mu=spec.factors[mu].name,
                            g=format_normal_form(spec, g),
                            element=format_normal_form(spec, h),
                        )
    return report
