"""
Geodesic triangles with fixed vertices.

A triangle has an E-large central component when each side carries a
component, the three pairwise connected, all of X-length > T with
T = max(S(3 eps0 + 2), E). Such components are connected to their
companions; triangles without one are thin around the projection of the
third vertex.
"""

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Iterable, Optional

from src.core.automorphism import Automorphism, apply_aut
from src.core.fixed_subgroup import FixedSample
from src.core.geodesics import geodesic_triangle, project
from src.core.image_path import ImageBuilder, edge_component, rebase_path
from src.core.metrics import DEFAULT_RADIUS_CAP, x_distance
from src.core.normal_form import format_normal_form
from src.core.paths import Component, Path, Triangle, are_connected, components, x_length_of_component
from src.core.probe_report import ProbeReport

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LargeCentralComponent:
    triangle: Triangle
    sides: tuple[Component, Component, Component]
    threshold: int


def large_component_threshold(S: int, eps0: int, E: int) -> int:
    return max(S * (3 * eps0 + 2), E)


def _rebased_triangle(phi: Automorphism, triangle: Triangle) -> Triangle:
    sides = tuple(rebase_path(phi, side) for side in triangle.sides)
    return Triangle(triangle.x, triangle.y, triangle.z, sides)


def find_large_central_component(
    phi: Automorphism, triangle: Triangle, T: int, radius_cap: int = DEFAULT_RADIUS_CAP
) -> Optional[LargeCentralComponent]:
    """First pairwise-connected triple of components longer than T, scanning sides in order."""
    triangle = _rebased_triangle(phi, triangle)
    heavy = [
        [c for c in components(side) if x_length_of_component(c, radius_cap) > T]
        for side in triangle.sides
    ]
    for a1, a2, a3 in itertools.product(*heavy):
        if are_connected(a1, a2) and are_connected(a2, a3) and are_connected(a1, a3):
            return LargeCentralComponent(triangle, (a1, a2, a3), T)
    return None


def _describe(phi: Automorphism, triangle: Triangle) -> dict:
    return {
        "x": format_normal_form(phi.spec, triangle.x),
        "y": format_normal_form(phi.spec, triangle.y),
        "z": format_normal_form(phi.spec, triangle.z),
    }


def hren_check(
    phi: Automorphism, triangles: Iterable[Triangle], E: int, T: int, radius_cap: int = DEFAULT_RADIUS_CAP
) -> ProbeReport:
    """Every side of an E-large central component is connected to its companion."""
    report = ProbeReport("hren", params={"E": E, "T": T}, qualifier="lcc_found")
    builder = ImageBuilder(phi, radius_cap)
    for triangle in triangles:
        report.samples += 1
        report.count("triangles")
        found = find_large_central_component(phi, triangle, T, radius_cap)
        if found is None:
            continue
        report.count("lcc_found")
        for k, comp in enumerate(found.sides):
            image = builder.image(comp.path)
            partner = edge_component(image.path, image.companion_index[comp.start])
            if not are_connected(comp, partner):
                report.violate(side=k, **_describe(phi, triangle))
    return report


def _projection_choices(phi: Automorphism, triangle: Triangle) -> list:
    side = triangle.sides[0]
    return [side.vertices[i] for i in project(phi.spec, triangle.z, side)]


def _nearest(phi: Automorphism, u, side: Path, radius_cap: int) -> int:
    return min(x_distance(phi.spec, u, v, radius_cap) for v in side.vertices)


def proj_eta_probe(
    phi: Automorphism, triangles: Iterable[Triangle], E: int, T: int, radius_cap: int = DEFAULT_RADIUS_CAP
) -> ProbeReport:
    """
    eta: some projection u of z onto [x,y] is d_X-close to both [x,z] and [y,z].

    Triangles with an E-large central component are skipped.
    """
    report = ProbeReport("proj_eta", params={"E": E, "T": T})
    report.declare("eta")
    for triangle in triangles:
        triangle = _rebased_triangle(phi, triangle)
        if find_large_central_component(phi, triangle, T, radius_cap) is not None:
            report.skipped += 1
            continue
        report.samples += 1
        best = min(
            max(
                _nearest(phi, u, triangle.sides[2], radius_cap),
                _nearest(phi, u, triangle.sides[1], radius_cap),
            )
            for u in _projection_choices(phi, triangle)
        )
        report.observe("eta", best, _describe(phi, triangle))
    return report


def theta_probe(
    phi: Automorphism, triangles: Iterable[Triangle], E: int, T: int, radius_cap: int = DEFAULT_RADIUS_CAP
) -> ProbeReport:
    """theta: a projection u of z onto [x,y] lies d_X-close to phi(u)."""
    report = ProbeReport("theta", params={"E": E, "T": T})
    report.declare("theta")
    for triangle in triangles:
        triangle = _rebased_triangle(phi, triangle)
        if find_large_central_component(phi, triangle, T, radius_cap) is not None:
            report.skipped += 1
            continue
        report.samples += 1
        best = min(
            x_distance(phi.spec, u, apply_aut(phi, u), radius_cap)
            for u in _projection_choices(phi, triangle)
        )
        report.observe("theta", best, _describe(phi, triangle))
    return report


def fixed_triangles(phi: Automorphism, sample: FixedSample, count: int, seed: Optional[int] = None) -> list[Triangle]:
    """
    Canonical-geodesic triangles on distinct fixed vertices.

    All of them when there are at most `count`; otherwise a seeded sample.
    """
    triples = list(itertools.combinations(sample.elements, 3))
    if len(triples) > count:
        if seed is None:
            raise ValueError("seed is required to sample triangles")
        rng = random.Random(seed)
        chosen = sorted(rng.sample(range(len(triples)), count))
        triples = [triples[i] for i in chosen]
    return [geodesic_triangle(phi.spec, x, y, z) for x, y, z in triples]
