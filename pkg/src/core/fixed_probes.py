"""
Probes measured against the windowed fixed sample.

All distances to Fix(phi) go to the FixedSample, so every estimate here is
an upper bound for the window that becomes exact once the window contains
the relevant fixed elements.
"""

import itertools
import logging
from typing import Iterable, Optional

from src.core.automorphism import Automorphism, apply_aut
from src.core.errors import LabelCapExceeded, RadiusCapExceeded
from src.core.fineness import coarse_components, fine_geodesics
from src.core.fixed_subgroup import FixedSample, distance_to_sample, enumerate_fixed
from src.core.geodesics import DEFAULT_LABEL_CAP, geodesic_labelings
from src.core.image_path import ImageBuilder
from src.core.metrics import DEFAULT_RADIUS_CAP, rel_distance, x_distance
from src.core.normal_form import format_normal_form
from src.core.paths import Path
from src.core.probe_report import ProbeReport
from src.core.window import DomainWindow, enumerate_domain

log = logging.getLogger(__name__)


def quasiconvexity_profile(
    phi: Automorphism,
    window: DomainWindow,
    label_cap: int = DEFAULT_LABEL_CAP,
    sample: Optional[FixedSample] = None,
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> ProbeReport:
    """
    sigma: max over fixed pairs, over every geodesic labelling between them
    and over its vertices, of the d_X-distance to the fixed sample.

    Geodesics g->h and h->g share their vertices, so unordered pairs suffice.
    Pairs whose labellings exceed the cap are skipped and counted.
    """
    spec = phi.spec
    sample = sample or enumerate_fixed(phi, window)
    report = ProbeReport("qc_profile", params={"window": window.label(), "label_cap": label_cap})
    report.declare("sigma")
    report.count("fixed", len(sample))
    if len(sample):
        report.observe("sigma", 0)
    for g, h in itertools.combinations(sample.elements, 2):
        try:
            paths = geodesic_labelings(spec, g, h, label_cap)
        except LabelCapExceeded:
            log.warning("qc profile: label cap %d exceeded; pair skipped", label_cap)
            report.skipped += 1
            continue
        report.samples += 1
        for p in paths:
            for v in p.vertices:
                d = distance_to_sample(spec, v, sample, radius_cap)
                report.observe("sigma", d, {
                    "g": format_normal_form(spec, g),
                    "h": format_normal_form(spec, h),
                    "vertex": format_normal_form(spec, v),
                })
    return report


def window_ladder(
    phi: Automorphism,
    windows: Iterable[DomainWindow],
    label_cap: int = DEFAULT_LABEL_CAP,
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> list[dict]:
    """sigma per window, in the order given; rows feed the CSV ladder."""
    rows = []
    for window in windows:
        report = quasiconvexity_profile(phi, window, label_cap, radius_cap=radius_cap)
        rows.append({
            "window": window.label(),
            "fixed": report.counts["fixed"],
            "pairs": report.samples,
            "skipped": report.skipped,
            "sigma": report.estimate["sigma"],
        })
    return rows


def fixed_proximity_probe(
    phi: Automorphism,
    window: DomainWindow,
    theta: int,
    sample: Optional[FixedSample] = None,
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> ProbeReport:
    """mu(theta): max d_X(y, Fix) over window elements y moved at most theta by phi."""
    if theta < 0:
        raise ValueError(f"theta must be >= 0, got {theta}")
    spec = phi.spec
    sample = sample or enumerate_fixed(phi, window)
    report = ProbeReport("fixed_proximity", params={"theta": theta, "window": window.label()})
    report.declare("mu")
    for y in enumerate_domain(spec, window):
        try:
            if x_distance(spec, y, apply_aut(phi, y), radius_cap) > theta:
                continue
            d = distance_to_sample(spec, y, sample, radius_cap)
        except RadiusCapExceeded:
            report.count("radius_cap")
            report.skipped += 1
            continue
        report.samples += 1
        report.observe("mu", d, {"y": format_normal_form(spec, y)})
    return report


def companion_proximity_check(
    phi: Automorphism,
    sample: FixedSample,
    geodesics: Iterable[Path],
    bound: Optional[int] = None,
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> ProbeReport:
    """
    mu': endpoints of components connected to their companions, on geodesics
    between fixed elements, lie d_X-close to Fix. Violations only against an
    explicit bound.
    """
    spec = phi.spec
    report = ProbeReport("companion_proximity", params={"bound": bound})
    report.declare("mu_prime")
    builder = ImageBuilder(phi, radius_cap)
    for p in geodesics:
        for comp, _, connected in coarse_components(phi, p, radius_cap, builder):
            if not connected:
                continue
            report.samples += 1
            d = max(
                distance_to_sample(spec, comp.first_vertex, sample, radius_cap),
                distance_to_sample(spec, comp.last_vertex, sample, radius_cap),
            )
            witness = {
                "start": format_normal_form(spec, p.start),
                "end": format_normal_form(spec, p.end),
                "component_index": comp.start,
            }
            report.observe("mu_prime", d, witness)
            if bound is not None and d > bound:
                report.violate(distance=d, **witness)
    return report


def _admissible_vertices(spec, p: Path, R: int) -> list:
    return [
        v for v in p.vertices
        if rel_distance(spec, p.start, v) >= R and rel_distance(spec, v, p.end) >= R
    ]


def fine_midpoint_probe(
    phi: Automorphism,
    sample: FixedSample,
    E: int,
    R: int,
    geodesics: Iterable[Path],
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> ProbeReport:
    """
    xi: on E-fine geodesics between fixed elements, the best vertex at
    rel-distance >= R from both ends is d_X-close to Fix.

    Geodesics without such a vertex are excluded. xi is the max over all
    qualifying geodesics; zeta is the least length from which on the max
    over longer geodesics has settled to its value on the longest ones.
    """
    spec = phi.spec
    report = ProbeReport("fine_midpoint", params={"E": E, "R": R})
    report.declare("xi", "zeta", "xi_tail")
    per_length: dict[int, int] = {}
    for p in fine_geodesics(phi, geodesics, E, radius_cap):
        candidates = _admissible_vertices(spec, p, R)
        if not candidates:
            report.skipped += 1
            continue
        report.samples += 1
        best = min(distance_to_sample(spec, u, sample, radius_cap) for u in candidates)
        report.observe("xi", best, {
            "start": format_normal_form(spec, p.start),
            "end": format_normal_form(spec, p.end),
        })
        per_length[len(p)] = max(per_length.get(len(p), 0), best)
    if per_length:
        lengths = sorted(per_length)
        tail = per_length[lengths[-1]]
        zeta = lengths[-1]
        running = tail
        for length in reversed(lengths):
            running = max(running, per_length[length])
            if running != tail:
                break
            zeta = length
        report.observe("zeta", zeta)
        report.observe("xi_tail", tail)
    return report


def qc_aux_probe(
    phi: Automorphism,
    sample: FixedSample,
    E: int,
    geodesics: Iterable[Path],
    radius_cap: int = DEFAULT_RADIUS_CAP,
) -> ProbeReport:
    """delta: vertices of E-fine geodesics between fixed elements stay d_X-close to Fix."""
    spec = phi.spec
    report = ProbeReport("qc_aux", params={"E": E})
    report.declare("delta")
    for p in fine_geodesics(phi, geodesics, E, radius_cap):
        report.samples += 1
        for v in p.vertices:
            report.observe("delta", distance_to_sample(spec, v, sample, radius_cap), {
                "start": format_normal_form(spec, p.start),
                "end": format_normal_form(spec, p.end),
                "vertex": format_normal_form(spec, v),
            })
    return report
