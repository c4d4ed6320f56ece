"""
Verification suites: named bundles of checks and probes run for one
automorphism under one RunConfig.

Sampled inputs come from the config seed; fixed-sample inputs are
exhaustive over the window. Checks that shard over their inputs merge
shard reports in shard order, so results do not depend on the worker count.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from functools import cached_property
from typing import Callable, Sequence, TypeVar

from src.core.automorphism import Automorphism, quasigeodesic_constant_A
from src.core.errors import ConfigError
from src.core.fineness import cascades_check, e_fine_stability_check, fixed_pair_geodesics
from src.core.fixed_probes import (
    companion_proximity_check,
    fine_midpoint_probe,
    fixed_proximity_probe,
    qc_aux_probe,
    quasiconvexity_profile,
)
from src.core.fixed_subgroup import (
    FixedSample,
    bounded_generation_check,
    enumerate_fixed,
    fixed_sample_closure_check,
    induced_peripherals,
    peripheral_intersection_check,
)
from src.core.geodesics import canonical_geodesic
from src.core.hyperbolic_probes import (
    PathPair,
    bcp_probe,
    four_k_probe,
    projection_check,
    projection_rho_probe,
    qg_close_probe,
    sample_close_pairs,
    sample_projection_triples,
    sample_translations,
    sample_triangles,
    translation_invariance_check,
)
from src.core.image_checks import (
    companion_connectivity_check,
    companion_length_check,
    image_backtracking_check,
    image_component_check,
    image_endpoint_check,
    image_quasigeodesic_check,
    inverse_round_trip_check,
    peripheral_edge_pairs,
    peripheral_edges,
)
from src.core.image_path import ImageBuilder
from src.core.metrics import x_distance
from src.core.paths import Path, Triangle, is_quasigeodesic, is_without_backtracking
from src.core.probe_report import ProbeReport, ProbeStatus, merge_reports
from src.core.run_config import EXHAUSTIVE_WINDOW_LIMIT, RunConfig
from src.core.triangles import fixed_triangles, hren_check, large_component_threshold, proj_eta_probe, theta_probe
from src.core.window import count_window, random_elements

log = logging.getLogger(__name__)

T = TypeVar("T")


def run_sharded(func: Callable[[list[T]], ProbeReport], items: Sequence[T], workers: int = 1) -> ProbeReport:
    """Split items into contiguous shards, run func on each, merge in shard order."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return func(items)
    size = -(-len(items) // workers)
    shards = [items[i:i + size] for i in range(0, len(items), size)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(func, shards))
    return merge_reports(reports)


def doubled_estimate(value: int) -> int:
    return max(2 * value, 1)


def checked_with_doubling(check: Callable[[int], ProbeReport], estimate: int) -> list[ProbeReport]:
    """
    Run check at the estimated constant; on violation run it again at the
    doubled constant and keep both reports.

    A violation that survives the doubling points at the implementation, one
    that disappears points at an under-estimated constant.
    """
    report = check(estimate)
    if report.status != ProbeStatus.FAIL:
        return [report]
    doubled = check(doubled_estimate(estimate))
    doubled.name = f"{report.name}_doubled"
    log.warning(
        "%s: %d violations at %d, %d at doubled %d",
        report.name, len(report.violations), estimate, len(doubled.violations), doubled_estimate(estimate),
    )
    return [report, doubled]


def close_geodesic_pairs(phi: Automorphism, geodesics: Sequence[Path], mu: int, radius_cap: int) -> list[PathPair]:
    """Ordered pairs of distinct geodesics whose endpoints are d_X-within mu."""
    spec = phi.spec
    pairs = []
    for i, p in enumerate(geodesics):
        for j, q in enumerate(geodesics):
            if i == j:
                continue
            if x_distance(spec, p.start, q.start, radius_cap) > mu:
                continue
            if x_distance(spec, p.end, q.end, radius_cap) > mu:
                continue
            pairs.append(PathPair(p, q))
    return pairs


class SuiteContext:
    """Lazily computed inputs shared by the checks of one run."""

    def __init__(self, phi: Automorphism, config: RunConfig):
        self.phi = phi
        self.config = config
        self.spec = phi.spec
        self.window = config.window
        self.radius_cap = config.bfs_radius_cap
        if config.exhaustive:
            size = count_window(self.spec, self.window)
            if size > EXHAUSTIVE_WINDOW_LIMIT:
                raise ConfigError(
                    f"window {self.window.label()} has {size} elements; exhaustive runs allow "
                    f"at most {EXHAUSTIVE_WINDOW_LIMIT}"
                )

    @property
    def seed(self) -> int:
        return self.config.seed

    @cached_property
    def sample(self) -> FixedSample:
        return enumerate_fixed(self.phi, self.window)

    @cached_property
    def geodesic_skips(self) -> ProbeReport:
        return ProbeReport("fixed_pair_geodesics", params={"label_cap": self.config.label_cap})

    @cached_property
    def geodesics(self) -> list[Path]:
        paths = fixed_pair_geodesics(self.phi, self.sample, self.config.label_cap, self.geodesic_skips)
        self.geodesic_skips.samples = len(paths)
        return paths

    @cached_property
    def eps0_report(self) -> ProbeReport:
        """
        Component matching between images of fixed-pair geodesics and the
        canonical geodesics with the same endpoints, at (A, A, 0).
        """
        A = quasigeodesic_constant_A(1, 0, self.phi.S)
        builder = ImageBuilder(self.phi, self.radius_cap)
        pairs = []
        for p in self.geodesics:
            image = builder.image(p).path
            if not (is_quasigeodesic(image, A, A) and is_without_backtracking(image)):
                continue
            pairs.append(PathPair(image, canonical_geodesic(self.spec, image.start, image.end)))
        return bcp_probe(pairs, A, A, 0, self.radius_cap, name="eps0")

    @property
    def eps0(self) -> int:
        estimate = self.eps0_report.estimate
        return max(estimate["eps_a"] or 0, estimate["eps_b"] or 0)

    @property
    def T(self) -> int:
        return large_component_threshold(self.phi.S, self.eps0, self.config.E)

    @cached_property
    def triangles(self) -> list[Triangle]:
        if self.config.exhaustive:
            count = math.comb(len(self.sample), 3)
        else:
            count = self.config.samples
        return fixed_triangles(self.phi, self.sample, count, self.seed)

    @cached_property
    def close_pairs(self) -> list[PathPair]:
        return sample_close_pairs(self.spec, self.window, self.seed, self.config.samples, self.config.label_cap)

    def sharded(self, func: Callable[[list], ProbeReport], items: Sequence) -> ProbeReport:
        return run_sharded(func, items, self.config.workers)


def suite_xlength(ctx: SuiteContext) -> list[ProbeReport]:
    phi, cap = ctx.phi, ctx.radius_cap
    n = ctx.config.samples
    edges = peripheral_edges(ctx.spec, ctx.window, ctx.seed, n)
    pairs = peripheral_edge_pairs(ctx.spec, ctx.window, ctx.seed + 1, n)
    return [
        ctx.sharded(lambda chunk: companion_length_check(phi, chunk, cap), edges),
        ctx.sharded(lambda chunk: companion_connectivity_check(phi, chunk, cap), pairs),
    ]


def suite_qgimage(ctx: SuiteContext) -> list[ProbeReport]:
    phi, cap = ctx.phi, ctx.radius_cap
    geodesics = [pair.p for pair in ctx.close_pairs] + list(ctx.geodesics)
    detours = [pair.q for pair in ctx.close_pairs]
    everything = geodesics + detours
    elements = random_elements(ctx.spec, ctx.window, ctx.seed + 4, ctx.config.samples)
    return [
        ctx.sharded(lambda chunk: image_backtracking_check(phi, chunk, cap), everything),
        ctx.sharded(lambda chunk: image_quasigeodesic_check(phi, chunk, 1, 0, cap), geodesics),
        ctx.sharded(lambda chunk: image_quasigeodesic_check(phi, chunk, 1, 2, cap), detours),
        ctx.sharded(lambda chunk: image_component_check(phi, chunk, cap), geodesics),
        ctx.sharded(lambda chunk: image_endpoint_check(phi, chunk, cap), everything),
        ctx.sharded(lambda chunk: inverse_round_trip_check(phi, chunk, cap), elements),
    ]


def suite_cascades(ctx: SuiteContext) -> list[ProbeReport]:
    phi, E, cap = ctx.phi, ctx.config.E, ctx.radius_cap

    def check(eps: int) -> ProbeReport:
        return ctx.sharded(lambda chunk: cascades_check(phi, chunk, E, eps, cap), ctx.geodesics)

    return [ctx.eps0_report, ctx.geodesic_skips, *checked_with_doubling(check, ctx.eps0)]


def suite_hren(ctx: SuiteContext) -> list[ProbeReport]:
    phi, E, cap = ctx.phi, ctx.config.E, ctx.radius_cap

    def check(T: int) -> ProbeReport:
        return ctx.sharded(lambda chunk: hren_check(phi, chunk, E, T, cap), ctx.triangles)

    return checked_with_doubling(check, ctx.T)


def suite_proj(ctx: SuiteContext) -> list[ProbeReport]:
    spec, n = ctx.spec, ctx.config.samples
    samples = sample_projection_triples(spec, ctx.window, ctx.seed, n)
    triangles = sample_triangles(spec, ctx.window, ctx.seed + 1, n)
    T = ctx.T
    return [
        ctx.sharded(lambda chunk: projection_check(spec, chunk), samples),
        ctx.sharded(lambda chunk: four_k_probe(spec, chunk), triangles),
        ctx.sharded(lambda chunk: proj_eta_probe(ctx.phi, chunk, ctx.config.E, T, ctx.radius_cap), ctx.triangles),
        ctx.sharded(lambda chunk: theta_probe(ctx.phi, chunk, ctx.config.E, T, ctx.radius_cap), ctx.triangles),
    ]


def suite_bcp(ctx: SuiteContext) -> list[ProbeReport]:
    spec, cap = ctx.spec, ctx.radius_cap
    triples = sample_projection_triples(spec, ctx.window, ctx.seed + 2, ctx.config.samples)
    return [
        ctx.sharded(lambda chunk: bcp_probe(chunk, 1, 2, 0, cap), ctx.close_pairs),
        ctx.sharded(lambda chunk: qg_close_probe(chunk, 1, 2, 0, cap), ctx.close_pairs),
        ctx.sharded(lambda chunk: projection_rho_probe(spec, chunk), triples),
    ]


def suite_maln(ctx: SuiteContext) -> list[ProbeReport]:
    return [peripheral_intersection_check(ctx.spec, ctx.window)]


def suite_bgen(ctx: SuiteContext) -> list[ProbeReport]:
    return [bounded_generation_check(ctx.phi, ctx.window, ctx.config.P, ctx.sample)]


def check_closure(ctx: SuiteContext) -> list[ProbeReport]:
    return [fixed_sample_closure_check(ctx.spec, ctx.sample)]


def check_induced(ctx: SuiteContext) -> list[ProbeReport]:
    return [induced_peripherals(ctx.phi, ctx.window, ctx.config.threshold, ctx.sample)]


def check_e_fine_stability(ctx: SuiteContext) -> list[ProbeReport]:
    phi, E, mu, cap = ctx.phi, ctx.config.E, ctx.config.mu, ctx.radius_cap
    pairs = close_geodesic_pairs(phi, ctx.geodesics, mu, cap)
    eps_report = bcp_probe(pairs, 1, 0, mu, cap, name="eps_stability")
    eps = max(eps_report.estimate["eps_a"] or 0, eps_report.estimate["eps_b"] or 0)

    def check(estimate: int) -> ProbeReport:
        return e_fine_stability_check(phi, ctx.geodesics, E, mu, estimate, cap)

    return [eps_report, *checked_with_doubling(check, eps)]


def check_companion_proximity(ctx: SuiteContext) -> list[ProbeReport]:
    return [companion_proximity_check(ctx.phi, ctx.sample, ctx.geodesics, radius_cap=ctx.radius_cap)]


def check_qc_profile(ctx: SuiteContext) -> list[ProbeReport]:
    return [quasiconvexity_profile(ctx.phi, ctx.window, ctx.config.label_cap, ctx.sample, ctx.radius_cap)]


def check_qc_aux(ctx: SuiteContext) -> list[ProbeReport]:
    return [qc_aux_probe(ctx.phi, ctx.sample, ctx.config.E, ctx.geodesics, ctx.radius_cap)]


def check_fine_midpoint(ctx: SuiteContext) -> list[ProbeReport]:
    return [fine_midpoint_probe(ctx.phi, ctx.sample, ctx.config.E, ctx.config.R, ctx.geodesics, ctx.radius_cap)]


def check_fixed_proximity(ctx: SuiteContext) -> list[ProbeReport]:
    return [fixed_proximity_probe(ctx.phi, ctx.window, ctx.config.theta, ctx.sample, ctx.radius_cap)]


def check_translation(ctx: SuiteContext) -> list[ProbeReport]:
    spec, cap = ctx.spec, ctx.radius_cap
    samples = sample_translations(spec, ctx.window, ctx.seed + 3, ctx.config.samples)
    return [ctx.sharded(lambda chunk: translation_invariance_check(spec, chunk, cap), samples)]


SUITES: dict[str, Callable[[SuiteContext], list[ProbeReport]]] = {
    "xlength": suite_xlength,
    "qgimage": suite_qgimage,
    "cascades": suite_cascades,
    "hren": suite_hren,
    "proj": suite_proj,
    "bcp": suite_bcp,
    "maln": suite_maln,
    "bgen": suite_bgen,
    "closure": check_closure,
    "induced": check_induced,
    "e_fine_stability": check_e_fine_stability,
    "companion_proximity": check_companion_proximity,
    "qc_profile": check_qc_profile,
    "qc_aux": check_qc_aux,
    "fine_midpoint": check_fine_midpoint,
    "fixed_proximity": check_fixed_proximity,
    "translation": check_translation,
}


def run_suites(phi: Automorphism, config: RunConfig) -> list[tuple[str, ProbeReport]]:
    """(suite name, report) in canonical suite order."""
    ctx = SuiteContext(phi, config)
    results = []
    for name in config.expanded_suites():
        log.info("suite %s: starting", name)
        for report in SUITES[name](ctx):
            report.seed = config.seed
            results.append((name, report))
    return results
