"""
Empirical probes for the relative Cayley graph's hyperbolicity constants.

The constants bounding component matching between close quasigeodesics
(eps), phase-vertex closeness (nu) and projection contraction (rho) exist
but have no formula. Each probe returns the maximum observed over its
sample, which lower-bounds the true constant.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from src.core.elements import NormalForm, XLetter
from src.core.errors import LemmaViolation, MalformedSample
from src.core.geodesics import (
    canonical_geodesic,
    distance_to_path,
    four_k_check,
    geodesic_labelings,
    geodesic_triangle,
    project,
)
from src.core.group_spec import GroupSpec
from src.core.metrics import DEFAULT_RADIUS_CAP, rel_distance, x_distance
from src.core.normal_form import format_normal_form, invert, letter_element, multiply
from src.core.paths import (
    Component,
    Path,
    Triangle,
    are_connected,
    components,
    is_quasigeodesic,
    is_without_backtracking,
    phase_vertices,
    x_length_of_component,
)
from src.core.probe_report import ProbeReport
from src.core.window import DomainWindow, random_elements

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PathPair:
    p: Path
    q: Path


@dataclass(frozen=True)
class ProjectionSample:
    line: Path
    a: NormalForm
    b: NormalForm


def _validate_pair(pair: PathPair, kappa, c, k: int, radius_cap: int) -> None:
    p, q = pair.p, pair.q
    for name, path in (("p", p), ("q", q)):
        if not is_quasigeodesic(path, kappa, c):
            raise MalformedSample(f"{name} is not a ({kappa},{c})-quasigeodesic")
        if not is_without_backtracking(path):
            raise MalformedSample(f"{name} has backtracking")
    spec = p.spec
    if x_distance(spec, p.start, q.start, radius_cap) > k or x_distance(spec, p.end, q.end, radius_cap) > k:
        raise MalformedSample(f"pair endpoints are more than k={k} apart in d_X")


def _endpoint_gap(a: Component, b: Component, radius_cap: int) -> int:
    spec = a.path.spec
    return max(
        x_distance(spec, a.first_vertex, b.first_vertex, radius_cap),
        x_distance(spec, a.last_vertex, b.last_vertex, radius_cap),
    )


def bcp_probe(
    pairs: Iterable[PathPair],
    kappa=1,
    c=0,
    k: int = 0,
    radius_cap: int = DEFAULT_RADIUS_CAP,
    name: str = "bcp",
) -> ProbeReport:
    """
    Component matching between close quasigeodesics without backtracking.

    eps_a: max X-length of a component with no connected partner on the
    other path. eps_b: over components that do have partners, max of the
    best endpoint gap. Both directions of each pair are scanned.
    """
    report = ProbeReport(name, params={"kappa": str(Fraction(kappa)), "c": str(Fraction(c)), "k": k})
    report.declare("eps_a", "eps_b")
    for pair in pairs:
        _validate_pair(pair, kappa, c, k, radius_cap)
        report.samples += 1
        report.observe("eps_a", 0)
        report.observe("eps_b", 0)
        for this, other in ((pair.p, pair.q), (pair.q, pair.p)):
            theirs = components(other)
            for s in components(this):
                partners = [t for t in theirs if are_connected(s, t)]
                if not partners:
                    report.observe("eps_a", x_length_of_component(s, radius_cap))
                    continue
                gap = min(_endpoint_gap(s, t, radius_cap) for t in partners)
                report.observe("eps_b", gap)
    return report


def qg_close_probe(
    pairs: Iterable[PathPair],
    kappa=1,
    c=0,
    k: int = 0,
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> ProbeReport:
    """nu: max over phase vertices u of p of the d_X-distance to the nearest phase vertex of q."""
    report = ProbeReport("qg_close", params={"kappa": str(Fraction(kappa)), "c": str(Fraction(c)), "k": k})
    report.declare("nu")
    for pair in pairs:
        _validate_pair(pair, kappa, c, k, radius_cap)
        report.samples += 1
        spec = pair.p.spec
        q_phase = [pair.q.vertices[j] for j in phase_vertices(pair.q)]
        for i in phase_vertices(pair.p):
            u = pair.p.vertices[i]
            nearest = min(x_distance(spec, u, v, radius_cap) for v in q_phase)
            report.observe("nu", nearest, {"u": format_normal_form(spec, u)})
    return report


def projection_rho_probe(spec: GroupSpec, samples: Iterable[ProjectionSample]) -> ProbeReport:
    """rho: max over samples and projection choices of d(a', b') - d(a, b)."""
    report = ProbeReport("projection_rho")
    report.declare("rho")
    for sample in samples:
        report.samples += 1
        base = rel_distance(spec, sample.a, sample.b)
        a_choices = project(spec, sample.a, sample.line)
        b_choices = project(spec, sample.b, sample.line)
        for i in a_choices:
            for j in b_choices:
                gap = rel_distance(spec, sample.line.vertices[i], sample.line.vertices[j]) - base
                report.observe("rho", gap, {
                    "a": format_normal_form(spec, sample.a),
                    "b": format_normal_form(spec, sample.b),
                })
    return report


def sample_close_pairs(
    spec: GroupSpec, window: DomainWindow, seed: int, count: int, label_cap: int = 4096
) -> list[PathPair]:
    """
    Pairs with common endpoints: a geodesic against either another geodesic
    labelling or a geodesic to h x^-1 followed by the edge x, which is
    (1,2)-quasigeodesic.
    """
    rng = random.Random(seed)
    letters = [XLetter(name, sign) for name in spec.generator_names for sign in (1, -1)]
    points = random_elements(spec, window, seed, 2 * count)
    pairs = []
    for n in range(count):
        g, h = points[2 * n], points[2 * n + 1]
        p = canonical_geodesic(spec, g, h)
        if n % 2 == 0:
            variants = geodesic_labelings(spec, g, h, label_cap)
            q = variants[rng.randrange(len(variants))]
        else:
            x = letters[rng.randrange(len(letters))]
            detour_end = multiply(spec, h, invert(spec, letter_element(spec, x)))
            q = canonical_geodesic(spec, g, detour_end).concat(Path(spec, detour_end, (x,)))
        pairs.append(PathPair(p, q))
    return pairs


def sample_projection_triples(
    spec: GroupSpec, window: DomainWindow, seed: int, count: int
) -> list[ProjectionSample]:
    points = random_elements(spec, window, seed, 4 * count)
    out = []
    for n in range(count):
        g, h, a, b = points[4 * n:4 * n + 4]
        out.append(ProjectionSample(canonical_geodesic(spec, g, h), a, b))
    return out


@dataclass(frozen=True)
class TranslationSample:
    path: Path
    by: NormalForm


def _component_shape(p: Path) -> list[tuple[int, int, int]]:
    return [(comp.start, comp.end, comp.factor) for comp in components(p)]


def _connection_matrix(p: Path) -> list[list[bool]]:
    comps = components(p)
    return [[are_connected(a, b) for b in comps] for a in comps]


def translation_invariance_check(
    spec: GroupSpec, samples: Iterable[TranslationSample], radius_cap: int = DEFAULT_RADIUS_CAP
) -> ProbeReport:
    """Left translation preserves both metrics, the components and their connectedness."""
    report = ProbeReport("translation_invariance")
    for sample in samples:
        report.samples += 1
        p = sample.path
        moved = p.translate(sample.by)
        checks = {
            "rel_distance": rel_distance(spec, p.start, p.end) == rel_distance(spec, moved.start, moved.end),
            "x_distance": x_distance(spec, p.start, p.end, radius_cap) == x_distance(spec, moved.start, moved.end, radius_cap),
            "components": _component_shape(p) == _component_shape(moved),
            "connected": _connection_matrix(p) == _connection_matrix(moved),
        }
        for kind, held in checks.items():
            if not held:
                report.violate(
                    kind=kind,
                    start=format_normal_form(spec, p.start),
                    by=format_normal_form(spec, sample.by),
                )
    return report


def sample_translations(spec: GroupSpec, window: DomainWindow, seed: int, count: int) -> list[TranslationSample]:
    """A canonical geodesic between two window elements and a window element to translate by."""
    points = random_elements(spec, window, seed, 3 * count)
    return [
        TranslationSample(canonical_geodesic(spec, points[3 * n], points[3 * n + 1]), points[3 * n + 2])
        for n in range(count)
    ]


def projection_check(spec: GroupSpec, samples: Iterable[ProjectionSample]) -> ProbeReport:
    """
    Every projection point attains the minimal distance, and the split paths
    through it are (3,0)-quasigeodesic without backtracking.
    """
    report = ProbeReport("projection")
    report.declare("choices")
    for sample in samples:
        for z in (sample.a, sample.b):
            report.samples += 1
            try:
                indices = project(spec, z, sample.line)
            except LemmaViolation as exc:
                report.violate(kind="split", z=format_normal_form(spec, z), detail=exc.detail)
                continue
            report.observe("choices", len(indices))
            distances = {rel_distance(spec, z, sample.line.vertices[i]) for i in indices}
            if len(distances) != 1 or distance_to_path(spec, z, sample.line) not in distances:
                report.violate(kind="not_nearest", z=format_normal_form(spec, z))
    return report


def _near_all_sides(spec: GroupSpec, triangle: Triangle, K: int) -> list[NormalForm]:
    candidates = sorted({v for side in triangle.sides for v in side.vertices}, key=NormalForm.sort_key)
    return [
        v for v in candidates
        if all(distance_to_path(spec, v, side) <= K for side in triangle.sides)
    ]


def four_k_probe(spec: GroupSpec, triangles: Iterable[Triangle], K_values: Iterable[int] = (0, 1, 2)) -> ProbeReport:
    """
    Points of the triangle's sides that are K-close to all three sides lie
    within 4K of each other; every qualifying pair is checked.
    """
    K_values = tuple(K_values)
    report = ProbeReport("four_k", params={"K": list(K_values)})
    for triangle in triangles:
        for K in K_values:
            near = _near_all_sides(spec, triangle, K)
            for i, u in enumerate(near):
                for v in near[i:]:
                    report.samples += 1
                    if not four_k_check(spec, triangle, K, u, v):
                        report.violate(
                            K=K,
                            u=format_normal_form(spec, u),
                            v=format_normal_form(spec, v),
                            x=format_normal_form(spec, triangle.x),
                            y=format_normal_form(spec, triangle.y),
                            z=format_normal_form(spec, triangle.z),
                        )
    return report


def sample_triangles(spec: GroupSpec, window: DomainWindow, seed: int, count: int) -> list[Triangle]:
    points = random_elements(spec, window, seed, 3 * count)
    return [geodesic_triangle(spec, *points[3 * n:3 * n + 3]) for n in range(count)]
