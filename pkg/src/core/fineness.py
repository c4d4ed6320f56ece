"""
E-fine geodesics and the cascade bound.

A geodesic is E-fine when none of its components of X-length > E is
connected to its own companion. Along an E-fine geodesic between fixed
points, the X-length of a component is bounded by
alpha(n) = (E + eps + 2)(S + 2 eps + 2)^(n+1), n the length before it.
"""

import logging
from typing import Iterable, Optional

from src.core.automorphism import Automorphism
from src.core.elements import NormalForm
from src.core.errors import LabelCapExceeded, NotGeodesicError
from src.core.fixed_subgroup import FixedSample
from src.core.geodesics import geodesic_labelings
from src.core.image_path import ImageBuilder, ImagePath, edge_component, rebase_path
from src.core.metrics import DEFAULT_RADIUS_CAP, x_distance, x_length
from src.core.normal_form import format_normal_form
from src.core.paths import Path, are_connected, components, is_geodesic, x_length_of_component
from src.core.probe_report import ProbeReport

log = logging.getLogger(__name__)


def coarse_components(phi: Automorphism, p: Path, radius_cap: int = DEFAULT_RADIUS_CAP, builder: Optional[ImageBuilder] = None):
    """
    (component, X-length, connected-to-companion) for each component of p.

    Components of a geodesic are single edges; the companion of a component
    is the companion of its first edge.
    """
    p = rebase_path(phi, p)
    builder = builder or ImageBuilder(phi, radius_cap)
    image: ImagePath = builder.image(p)
    out = []
    for comp in components(p):
        partner = edge_component(image.path, image.companion_index[comp.start])
        out.append((comp, x_length_of_component(comp, radius_cap), are_connected(comp, partner)))
    return out


def is_e_fine(
    phi: Automorphism,
    p: Path,
    E: int,
    radius_cap: int = DEFAULT_RADIUS_CAP,
    builder: Optional[ImageBuilder] = None,
) -> bool:
    if not is_geodesic(p):
        raise NotGeodesicError("is_e_fine() requires a geodesic path")
    return not any(
        length > E and connected
        for _, length, connected in coarse_components(phi, p, radius_cap, builder)
    )


def alpha_bound(E: int, eps: int, S: int, n: int) -> int:
    if min(E, eps, n) < 0 or S < 1:
        raise ValueError(f"alpha_bound needs E, eps, n >= 0 and S >= 1; got ({E}, {eps}, {S}, {n})")
    return (E + eps + 2) * (S + 2 * eps + 2) ** (n + 1)


def fixed_pair_geodesics(
    phi: Automorphism, sample: FixedSample, label_cap: int, report: Optional[ProbeReport] = None
) -> list[Path]:
    """Every geodesic labelling between distinct fixed elements; pairs over the cap are skipped."""
    paths = []
    for g in sample.elements:
        for h in sample.elements:
            if g == h:
                continue
            try:
                paths.extend(geodesic_labelings(phi.spec, g, h, label_cap))
            except LabelCapExceeded:
                log.warning("label cap %d exceeded between fixed elements; pair skipped", label_cap)
                if report is not None:
                    report.skipped += 1
    return paths


def fine_geodesics(
    phi: Automorphism,
    geodesics: Iterable[Path],
    E: int,
    radius_cap: int = DEFAULT_RADIUS_CAP,
    builder: Optional[ImageBuilder] = None,
) -> list[Path]:
    builder = builder or ImageBuilder(phi, radius_cap)
    return [p for p in geodesics if is_e_fine(phi, p, E, radius_cap, builder)]


def fine_segments(
    phi: Automorphism,
    x: NormalForm,
    E: int,
    R: int,
    sample: FixedSample,
    label_cap: int = 4096,
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> tuple[set[Path], int]:
    """
    Initial segments of length 0..R of E-fine geodesics from x to windowed
    fixed elements, and C_hat = the largest X-length among them.
    """
    builder = ImageBuilder(phi, radius_cap)
    segments: set[Path] = {Path(phi.spec, x, ())}
    for y in sample.elements:
        if y == x:
            continue
        for p in geodesic_labelings(phi.spec, x, y, label_cap, radius_cap):
            if is_e_fine(phi, p, E, radius_cap, builder):
                segments.update(p.subpath(0, k) for k in range(1, min(R, len(p)) + 1))
    C_hat = max(x_length(phi.spec, s.label_element(), radius_cap) for s in segments)
    return segments, C_hat


def cascades_check(
    phi: Automorphism,
    geodesics: Iterable[Path],
    E: int,
    eps: int,
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> ProbeReport:
    """
    l_X(e) <= alpha(l(p_1)) for every component e of every E-fine geodesic
    p = p_1 e p_2 in the sample. Margins are bucketed by order of magnitude.
    """
    report = ProbeReport("cascades", params={"E": E, "eps": eps, "S": phi.S})
    report.declare("max_component_x_length")
    builder = ImageBuilder(phi, radius_cap)
    for p in geodesics:
        if not is_e_fine(phi, p, E, radius_cap, builder):
            report.skipped += 1
            continue
        report.samples += 1
        for comp, length, _ in coarse_components(phi, p, radius_cap, builder):
            bound = alpha_bound(E, eps, phi.S, comp.start)
            report.observe("max_component_x_length", length)
            margin = bound - length
            if margin < 0:
                report.violate(
                    start=format_normal_form(phi.spec, p.start),
                    end=format_normal_form(phi.spec, p.end),
                    component_index=comp.start,
                    x_length=length,
                    bound=bound,
                )
            elif margin < 10:
                report.count("margin<10")
            elif margin < 100:
                report.count("margin<100")
            else:
                report.count("margin>=100")
    return report


def e_fine_stability_check(
    phi: Automorphism,
    geodesics: list[Path],
    E0: int,
    mu: int,
    eps: int,
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> ProbeReport:
    """
    If p is E0-fine and q has endpoints d_X-within mu of p's, then q is
    (E0 + 2 eps)-fine.
    """
    report = ProbeReport("e_fine_stability", params={"E0": E0, "mu": mu, "eps": eps})
    builder = ImageBuilder(phi, radius_cap)
    fine = [is_e_fine(phi, p, E0, radius_cap, builder) for p in geodesics]
    relaxed = [is_e_fine(phi, q, E0 + 2 * eps, radius_cap, builder) for q in geodesics]
    spec = phi.spec
    for i, p in enumerate(geodesics):
        if not fine[i]:
            continue
        for j, q in enumerate(geodesics):
            if i == j:
                continue
            if x_distance(spec, p.start, q.start, radius_cap) > mu:
                continue
            if x_distance(spec, p.end, q.end, radius_cap) > mu:
                continue
            report.samples += 1
            if not relaxed[j]:
                report.violate(
                    p_start=format_normal_form(spec, p.start),
                    p_end=format_normal_form(spec, p.end),
                    q_start=format_normal_form(spec, q.start),
                    q_end=format_normal_form(spec, q.end),
                )
    return report
