"""
relfix command line.

Exit status: 0 success, 1 violations (the report is still written),
2 input errors.
"""

import argparse
import json
import logging
import sys
from typing import Callable, Optional

from src.core.aut_parsers import load_automorphism
from src.core.automorphism import Automorphism
from src.core.errors import ConfigError, RelfixError
from src.core.fixed_probes import fine_midpoint_probe, fixed_proximity_probe, quasiconvexity_profile, window_ladder
from src.core.fixed_subgroup import enumerate_fixed, induced_peripherals
from src.core.geodesics import canonical_geodesic, geodesic_labelings
from src.core.group_parsers import GroupDocument, parse_group_document, parse_word
from src.core.group_spec import GroupSpec, group_digest
from src.core.hyperbolic_probes import (
    bcp_probe,
    projection_rho_probe,
    qg_close_probe,
    sample_close_pairs,
    sample_projection_triples,
)
from src.core.logging import RunLogger
from src.core.metrics import rel_distance, x_distance
from src.core.normal_form import format_label, format_normal_form, multiply_all
from src.core.probe_report import ProbeReport
from src.core.report_writer import emit_ladder_csv, emit_report, has_violations, write_output
from src.core.run_config import RunConfig
from src.core.suites import SuiteContext, run_suites
from src.core.triangles import proj_eta_probe
from src.core.window import DomainWindow

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_INPUT_ERROR = 2

PROBES = ("bcp", "qgclose", "rho", "eta", "mu", "xi")


class Session:
    """Group document, config and (optionally) the automorphism of one invocation."""

    def __init__(self, args: argparse.Namespace, suites: tuple[str, ...] = ()):
        self.args = args
        self.config = RunConfig(
            group_path=args.group,
            automorphism=getattr(args, "aut", None),
            R_syl=args.syl,
            R_x=args.coord,
            suites=suites,
            samples=args.samples,
            seed=args.seed,
            out_path=args.out,
            output_format=args.format,
            bfs_radius_cap=args.cap,
            label_cap=args.label_cap,
            intersection_threshold=args.threshold,
            E=args.E,
            theta=args.theta,
            R=args.R,
            P=args.P,
        )
        with open(args.group, encoding="utf-8") as f:
            self.group_text = f.read()
        self.document: GroupDocument = parse_group_document(self.group_text)
        self._phi: Optional[Automorphism] = None
        self.logger = RunLogger(args.log_dir) if args.log_dir else None

    @property
    def phi(self) -> Automorphism:
        if self._phi is None:
            if not self.config.automorphism:
                raise ConfigError("--aut is required for this command")
            self._phi = load_automorphism(self.document, self.config.automorphism, self.config.bfs_radius_cap)
        return self._phi

    @property
    def spec(self) -> GroupSpec:
        """phi's spec (with adjoined conjugators) when --aut is given."""
        return self.phi.spec if self.config.automorphism else self.document.spec

    def input_hash(self) -> str:
        name = self.config.automorphism
        source = self.document.automorphism_sources.get(name, "") if name else ""
        return self.logger.compute_input_hash(self.group_text, source) if self.logger else ""

    def emit(self, results: list[tuple[str, ProbeReport]]) -> int:
        text = emit_report(self.config.to_dict(), group_digest(self.document.spec), results)
        write_output(text, self.config.out_path)
        code = EXIT_VIOLATIONS if has_violations(results) else EXIT_OK
        if self.logger:
            for suite, report in results:
                self.logger.log_check(suite, report)
            self.logger.log_run_end(code, len(results))
        return code

    def require_seed(self) -> int:
        if self.config.seed is None:
            raise ConfigError("--seed is required for sampled probes")
        return self.config.seed


def _print(text: str, session: Session) -> int:
    write_output(text + "\n", session.config.out_path)
    return EXIT_OK


def cmd_nf(session: Session) -> int:
    spec = session.document.spec
    return _print(format_normal_form(spec, parse_word(spec, session.args.word)), session)


def cmd_mul(session: Session) -> int:
    spec = session.document.spec
    product = multiply_all(spec, (parse_word(spec, w) for w in session.args.words))
    return _print(format_normal_form(spec, product), session)


def cmd_dist(session: Session) -> int:
    spec = session.spec
    g = parse_word(spec, session.args.source)
    h = parse_word(spec, session.args.target)
    if session.args.metric == "rel":
        value = rel_distance(spec, g, h)
    else:
        value = x_distance(spec, g, h, session.config.bfs_radius_cap)
    return _print(str(value), session)


def cmd_geodesic(session: Session) -> int:
    spec = session.document.spec
    g = parse_word(spec, session.args.source)
    h = parse_word(spec, session.args.target)
    if session.args.all:
        paths = geodesic_labelings(spec, g, h, session.config.label_cap)
    else:
        paths = [canonical_geodesic(spec, g, h)]
    lines = [" ".join(format_label(spec, x) for x in p.labels) or "(empty)" for p in paths]
    return _print("\n".join(lines), session)


def cmd_aut_check(session: Session) -> int:
    phi = session.phi
    spec = phi.spec
    summary = {
        "automorphism": phi.name,
        "S": phi.S,
        "peripheral_map": {
            spec.factors[factor].name: {
                "target": spec.factors[image.target].name,
                "conjugator": format_normal_form(spec, image.conjugator),
            }
            for factor, image in sorted(phi.peripheral_map.items())
        },
        "extra_x_elements": [format_normal_form(spec, f) for f in spec.extra_x_elements],
    }
    return _print(json.dumps(summary, sort_keys=True, indent=2), session)


def cmd_fix_enumerate(session: Session) -> int:
    phi = session.phi
    sample = enumerate_fixed(phi, session.config.window)
    document = {
        "automorphism": phi.name,
        "window": sample.window.label(),
        "count": len(sample),
        "elements": [format_normal_form(phi.spec, g) for g in sample.elements],
    }
    return _print(json.dumps(document, sort_keys=True, indent=2), session)


def _ladder_windows(window: DomainWindow) -> list[DomainWindow]:
    top = max(window.max_syllables, window.max_factor_length)
    windows = []
    for k in range(1, top + 1):
        w = DomainWindow(min(k, window.max_syllables), min(k, window.max_factor_length))
        if w not in windows:
            windows.append(w)
    return windows


def cmd_fix_qc_profile(session: Session) -> int:
    config = session.config
    if config.output_format == "csv":
        rows = window_ladder(session.phi, _ladder_windows(config.window), config.label_cap, config.bfs_radius_cap)
        write_output(emit_ladder_csv(rows), config.out_path)
        return EXIT_OK
    report = quasiconvexity_profile(session.phi, config.window, config.label_cap, radius_cap=config.bfs_radius_cap)
    return session.emit([("qc_profile", report)])


def cmd_fix_induced(session: Session) -> int:
    report = induced_peripherals(session.phi, session.config.window, session.config.threshold)
    return session.emit([("induced", report)])


def cmd_verify(session: Session) -> int:
    if session.logger:
        for suite in session.config.expanded_suites():
            session.logger.log_suite_start(suite, session.config.automorphism, session.input_hash())
    return session.emit(run_suites(session.phi, session.config))


def cmd_probe(session: Session) -> int:
    config = session.config
    kind = session.args.kind
    spec = session.spec
    if kind in ("bcp", "qgclose"):
        pairs = sample_close_pairs(spec, config.window, session.require_seed(), config.samples, config.label_cap)
        probe = bcp_probe if kind == "bcp" else qg_close_probe
        report = probe(pairs, 1, 2, 0, config.bfs_radius_cap)
    elif kind == "rho":
        triples = sample_projection_triples(spec, config.window, session.require_seed(), config.samples)
        report = projection_rho_probe(spec, triples)
    else:
        ctx = SuiteContext(session.phi, config)
        if kind == "eta":
            report = proj_eta_probe(ctx.phi, ctx.triangles, config.E, ctx.T, config.bfs_radius_cap)
        elif kind == "mu":
            report = fixed_proximity_probe(ctx.phi, config.window, config.theta, ctx.sample, config.bfs_radius_cap)
        else:
            report = fine_midpoint_probe(ctx.phi, ctx.sample, config.E, config.R, ctx.geodesics, config.bfs_radius_cap)
    report.seed = config.seed
    return session.emit([(kind, report)])


def _add_common(parser: argparse.ArgumentParser, needs_aut: bool = False) -> None:
    parser.add_argument("--group", required=True, help="group spec file")
    parser.add_argument("--aut", required=needs_aut, default=None, help="automorphism name in the group file")
    parser.add_argument("--syl", type=int, default=2, help="window: max syllables (R_syl)")
    parser.add_argument("--coord", type=int, default=2, help="window: max coordinate magnitude (R_x)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--cap", type=int, default=8, help="BFS radius cap for d_X")
    parser.add_argument("--label-cap", type=int, default=4096, dest="label_cap")
    parser.add_argument("--threshold", type=int, default=None, help="induced peripheral count threshold")
    parser.add_argument("--E", type=int, default=0, dest="E")
    parser.add_argument("--theta", type=int, default=2)
    parser.add_argument("--R", type=int, default=1, dest="R")
    parser.add_argument("--P", type=int, default=4, dest="P")
    parser.add_argument("--out", default=None, help="output file (default stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--log-dir", default=None, dest="log_dir")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relfix", description="Fixed subgroups of automorphisms of free products")
    sub = parser.add_subparsers(dest="command", required=True)

    nf = sub.add_parser("nf", help="normal form of a word")
    _add_common(nf)
    nf.add_argument("--word", required=True)
    nf.set_defaults(handler=cmd_nf)

    mul = sub.add_parser("mul", help="product of words")
    _add_common(mul)
    mul.add_argument("words", nargs="+")
    mul.set_defaults(handler=cmd_mul)

    dist = sub.add_parser("dist", help="distance between two elements")
    _add_common(dist)
    dist.add_argument("--metric", choices=("rel", "x"), default="rel")
    dist.add_argument("--from", required=True, dest="source")
    dist.add_argument("--to", required=True, dest="target")
    dist.set_defaults(handler=cmd_dist)

    geodesic = sub.add_parser("geodesic", help="geodesic labels between two elements")
    _add_common(geodesic)
    geodesic.add_argument("--from", required=True, dest="source")
    geodesic.add_argument("--to", required=True, dest="target")
    geodesic.add_argument("--all", action="store_true", help="every geodesic labelling")
    geodesic.set_defaults(handler=cmd_geodesic)

    aut = sub.add_parser("aut", help="automorphism commands")
    aut_sub = aut.add_subparsers(dest="aut_command", required=True)
    aut_check = aut_sub.add_parser("check", help="validate an automorphism")
    _add_common(aut_check, needs_aut=True)
    aut_check.set_defaults(handler=cmd_aut_check)

    fix = sub.add_parser("fix", help="fixed subgroup commands")
    fix_sub = fix.add_subparsers(dest="fix_command", required=True)
    for name, handler in (
        ("enumerate", cmd_fix_enumerate),
        ("qc-profile", cmd_fix_qc_profile),
        ("induced", cmd_fix_induced),
    ):
        p = fix_sub.add_parser(name)
        _add_common(p, needs_aut=True)
        p.set_defaults(handler=handler)

    verify = sub.add_parser("verify", help="run verification suites")
    _add_common(verify, needs_aut=True)
    verify.add_argument("--suite", default="all", help="comma-separated suite names, or all")
    verify.set_defaults(handler=cmd_verify)

    probe = sub.add_parser("probe", help="run one constant probe")
    probe.add_argument("kind", choices=PROBES)
    _add_common(probe)
    probe.set_defaults(handler=cmd_probe)
    return parser


def run_command(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT_ERROR
    handler: Callable[[Session], int] = args.handler
    suites = tuple(s.strip() for s in args.suite.split(",") if s.strip()) if args.command == "verify" else ()
    try:
        session = Session(args, suites)
        return handler(session)
    except (RelfixError, OSError) as exc:
        print(f"relfix: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run_command(sys.argv[1:]))
