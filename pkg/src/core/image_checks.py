"""
Checks on images of paths: companion lengths and connectedness, absence of
backtracking, quasigeodesicity with the constant A, and single-edge
components of geodesic images.
"""

import logging
import random
from fractions import Fraction
from typing import Iterable

from src.core.automorphism import Automorphism, apply_aut, compose, inverse_automorphism, quasigeodesic_constant_A
from src.core.elements import ExtraLetter, HLetter, NormalForm
from src.core.group_spec import GroupSpec
from src.core.image_path import ImageBuilder, edge_component, edge_x_length, rebase_path
from src.core.metrics import DEFAULT_RADIUS_CAP
from src.core.normal_form import format_normal_form, letter_element, multiply, word_letters
from src.core.paths import Path, are_connected, components, is_quasigeodesic, is_without_backtracking
from src.core.probe_report import ProbeReport
from src.core.window import DomainWindow, factor_syllables, random_elements

log = logging.getLogger(__name__)


def _edge_witness(spec: GroupSpec, p: Path) -> dict:
    return {"vertex": format_normal_form(spec, p.start), "label": list(p.labels[0].vector)}


def companion_length_check(
    phi: Automorphism, edges: Iterable[Path], radius_cap: int = DEFAULT_RADIUS_CAP
) -> ProbeReport:
    """l_X(e_phi) <= S l_X(e) + 2 and l_X(e) <= S (l_X(e_phi) + 2) for one-edge H-paths e."""
    report = ProbeReport("companion_length", params={"S": phi.S})
    report.declare("max_companion_x_length")
    builder = ImageBuilder(phi, radius_cap)
    S = phi.S
    for edge in edges:
        edge = rebase_path(phi, edge)
        report.samples += 1
        image = builder.image(edge)
        partner = edge_component(image.path, image.companion_index[0])
        own = edge_x_length(edge_component(edge, 0), radius_cap)
        theirs = edge_x_length(partner, radius_cap)
        report.observe("max_companion_x_length", theirs, _edge_witness(phi.spec, edge))
        if theirs > S * own + 2:
            report.violate(kind="companion_too_long", x_length=own, companion_x_length=theirs, **_edge_witness(phi.spec, edge))
        if own > S * (theirs + 2):
            report.violate(kind="companion_too_short", x_length=own, companion_x_length=theirs, **_edge_witness(phi.spec, edge))
    return report


def companion_connectivity_check(
    phi: Automorphism, edge_pairs: Iterable[tuple[Path, Path]], radius_cap: int = DEFAULT_RADIUS_CAP
) -> ProbeReport:
    """e and f are connected iff their companions are."""
    report = ProbeReport("companion_connectivity")
    builder = ImageBuilder(phi, radius_cap)
    for e, f in edge_pairs:
        e, f = rebase_path(phi, e), rebase_path(phi, f)
        report.samples += 1
        image_e, image_f = builder.image(e), builder.image(f)
        before = are_connected(edge_component(e, 0), edge_component(f, 0))
        after = are_connected(
            edge_component(image_e.path, image_e.companion_index[0]),
            edge_component(image_f.path, image_f.companion_index[0]),
        )
        report.count("connected" if before else "separate")
        if before != after:
            report.violate(
                connected=before,
                companions_connected=after,
                e=_edge_witness(phi.spec, e),
                f=_edge_witness(phi.spec, f),
            )
    return report


def _single_edge_components(p: Path) -> bool:
    return all(comp.length == 1 for comp in components(p))


def image_backtracking_check(
    phi: Automorphism, paths: Iterable[Path], radius_cap: int = DEFAULT_RADIUS_CAP
) -> ProbeReport:
    """Images of paths without backtracking whose components are single edges have no backtracking."""
    report = ProbeReport("image_backtracking")
    builder = ImageBuilder(phi, radius_cap)
    for p in paths:
        p = rebase_path(phi, p)
        if not (is_without_backtracking(p) and _single_edge_components(p)):
            report.skipped += 1
            continue
        report.samples += 1
        if not is_without_backtracking(builder.image(p).path):
            report.violate(start=format_normal_form(phi.spec, p.start), end=format_normal_form(phi.spec, p.end))
    return report


def image_quasigeodesic_check(
    phi: Automorphism, paths: Iterable[Path], kappa=1, c=0, radius_cap: int = DEFAULT_RADIUS_CAP
) -> ProbeReport:
    """
    phi(p) is (A, A)-quasigeodesic for every (kappa, c)-quasigeodesic p
    without backtracking, A = max(S,3) kappa (2S+1)(2S+2) + max(S,3) c.
    """
    A = quasigeodesic_constant_A(kappa, c, phi.S)
    report = ProbeReport("image_quasigeodesic", params={"kappa": str(Fraction(kappa)), "c": str(Fraction(c)), "A": str(A)})
    builder = ImageBuilder(phi, radius_cap)
    for p in paths:
        p = rebase_path(phi, p)
        if not (is_quasigeodesic(p, kappa, c) and is_without_backtracking(p)):
            report.skipped += 1
            continue
        report.samples += 1
        if not is_quasigeodesic(builder.image(p).path, A, A):
            report.violate(start=format_normal_form(phi.spec, p.start), end=format_normal_form(phi.spec, p.end))
    return report


def image_component_check(
    phi: Automorphism, geodesics: Iterable[Path], radius_cap: int = DEFAULT_RADIUS_CAP
) -> ProbeReport:
    """Every component of the image of a geodesic is a single edge."""
    report = ProbeReport("image_components")
    builder = ImageBuilder(phi, radius_cap)
    for p in geodesics:
        p = rebase_path(phi, p)
        report.samples += 1
        image = builder.image(p)
        long_ones = [comp for comp in components(image.path) if comp.length > 1]
        if long_ones:
            report.violate(
                start=format_normal_form(phi.spec, p.start),
                end=format_normal_form(phi.spec, p.end),
                component_index=long_ones[0].start,
            )
    return report


def _declared_labels(spec: GroupSpec, labels) -> tuple:
    """Adjoined letters spelled out in declared generators."""
    out = []
    for label in labels:
        if isinstance(label, ExtraLetter):
            out.extend(word_letters(spec, letter_element(spec, label)))
        else:
            out.append(label)
    return tuple(out)


def image_endpoint_check(
    phi: Automorphism, paths: Iterable[Path], radius_cap: int = DEFAULT_RADIUS_CAP
) -> ProbeReport:
    """The image under phi^-1 of phi(p) has the endpoints of p."""
    report = ProbeReport("image_endpoints")
    psi = inverse_automorphism(phi, radius_cap)
    forward = ImageBuilder(phi, radius_cap)
    backward = ImageBuilder(psi, radius_cap)
    for p in paths:
        p = rebase_path(phi, p)
        report.samples += 1
        there = forward.image(p).path
        back = backward.image(Path(psi.spec, there.base, _declared_labels(phi.spec, there.labels))).path
        if back.start != p.start or back.end != p.end:
            report.violate(start=format_normal_form(phi.spec, p.start), end=format_normal_form(phi.spec, p.end))
    return report


def inverse_round_trip_check(
    phi: Automorphism, elements: Iterable[NormalForm], radius_cap: int = DEFAULT_RADIUS_CAP
) -> ProbeReport:
    """phi o phi^-1 and phi^-1 o phi fix every sampled element, not only the generators."""
    report = ProbeReport("inverse_round_trip")
    psi = inverse_automorphism(phi, radius_cap)
    loops = (compose(phi, psi, radius_cap), compose(psi, phi, radius_cap))
    for g in elements:
        report.samples += 1
        for loop in loops:
            if apply_aut(loop, g) != g:
                report.violate(element=format_normal_form(phi.spec, g), composite=loop.name)
    return report


def peripheral_edges(spec: GroupSpec, window: DomainWindow, seed: int, count: int) -> list[Path]:
    """
    One-edge H-paths: every window H-letter once, based at seeded window
    vertices, then seeded extra draws up to `count`.
    """
    rng = random.Random(seed)
    letters = [
        HLetter(i, syllable.coordinates)
        for i in spec.peripheral_indices
        for syllable in factor_syllables(spec, i, window.max_factor_length)
    ]
    if not letters:
        return []
    total = max(count, len(letters))
    bases = random_elements(spec, window, seed, total)
    chosen = letters + [letters[rng.randrange(len(letters))] for _ in range(total - len(letters))]
    return [Path(spec, base, (label,)) for base, label in zip(bases, chosen)]


def peripheral_edge_pairs(spec: GroupSpec, window: DomainWindow, seed: int, count: int) -> list[tuple[Path, Path]]:
    """Pairs of one-edge H-paths; every other pair starts in a common coset."""
    rng = random.Random(seed)
    edges = peripheral_edges(spec, window, seed, 2 * count)
    pairs = []
    for n in range(min(count, len(edges) // 2)):
        e, f = edges[2 * n], edges[2 * n + 1]
        if n % 2 == 0:
            label = e.labels[0]
            syllables = factor_syllables(spec, label.factor, window.max_factor_length)
            shift = NormalForm((syllables[rng.randrange(len(syllables))],))
            f = Path(spec, multiply(spec, e.start, shift), (label,))
        pairs.append((e, f))
    return pairs
