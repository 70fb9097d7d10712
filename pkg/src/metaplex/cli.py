"""Command-line interface.

Subcommands:

  infer       run the full admission pipeline on a weighted 1-skeleton
  weights     extend concentrations over a given complex
  centrality  per-simplex centrality report at one level and one alpha
  matrix      export a level's binary or strength adjacency matrix
  validate    closure, scheme axioms, and all four conservation checks
  clique      clique complex of the input graph, capped at a dimension
  random      emit a seeded random instance (edge list + concentrations)

Exit codes: 0 success, 1 validation failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io as mio
from .centrality import adjacency_matrices, build_report
from .complexes import clique_complex, validate_closure
from .concentration import (
    extend_full,
    validate_cumulative_decomposition,
    validate_facet_decomposition,
    validate_global_conservation,
    validate_level_conservation,
    validate_scheme,
)
from .errors import MetaplexError, ParseError, SchemeInvalid
from .inference import infer_metaplex
from .oracles import RandomCMSpec, generate_random_cm

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INPUT = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metaplex",
        description="concentration-weighted simplicial complexes: inference and centrality",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    topo = common.add_argument_group("topology (exactly one)")
    topo.add_argument("--edges", type=Path, help="whitespace-separated edge list file")
    topo.add_argument("--facets", type=Path, help="JSON facet-list file (closure applied)")
    conc = common.add_argument_group("concentrations (exactly one)")
    conc.add_argument("--concentrations", type=Path, help="two-column 'vertex rational' file")
    conc.add_argument(
        "--internal", type=Path, help="JSON internal structures, reduced to totals on load"
    )
    common.add_argument(
        "--scheme",
        default="uniform",
        help="contribution scheme: 'uniform' or 'table:PATH' (default: uniform)",
    )
    common.add_argument("--max-dim", type=int, default=3, help="inference dimension cap (default: 3)")
    common.add_argument(
        "--multiplier",
        default=None,
        help="fixed threshold multiplier p/q (default: q+1 at dimension q)",
    )
    common.add_argument(
        "--non-strict",
        action="store_true",
        help="admit candidates whose boundary weight equals the threshold",
    )
    common.add_argument(
        "--format", choices=("text", "json", "csv"), default="text", help="output format"
    )
    common.add_argument("--out", type=Path, default=None, help="write artifacts into this directory")

    sub.add_parser("infer", parents=[common], help="run the admission pipeline")
    sub.add_parser("weights", parents=[common], help="extend weights over the given complex")

    p_cent = sub.add_parser("centrality", parents=[common], help="centrality report at one level")
    p_cent.add_argument("--q", type=int, required=True, help="simplex dimension to report on")
    p_cent.add_argument("--alpha", type=float, default=1.0, help="interpolation exponent (default: 1)")
    p_cent.add_argument(
        "--incoming",
        action="store_true",
        help="use incoming rather than outgoing distances for closeness/farness",
    )

    p_mat = sub.add_parser("matrix", parents=[common], help="export a level adjacency matrix")
    p_mat.add_argument("--q", type=int, required=True, help="simplex dimension to export")
    p_mat.add_argument("--weighted", action="store_true", help="strength matrix instead of binary")

    sub.add_parser("validate", parents=[common], help="run every structural validator")
    sub.add_parser("clique", parents=[common], help="clique complex of the input graph")

    p_rand = sub.add_parser("random", help="emit a seeded random instance")
    p_rand.add_argument("--seed", type=int, required=True, help="instance seed")
    p_rand.add_argument("--vertices", type=int, default=6, help="vertex count (default: 6)")
    p_rand.add_argument(
        "--edge-probability", type=float, default=0.5, help="independent edge probability"
    )
    p_rand.add_argument("--conc-low", default="1/2", help="concentration lower bound (rational)")
    p_rand.add_argument("--conc-high", default="8", help="concentration upper bound (rational)")
    p_rand.add_argument("--out", type=Path, required=True, help="directory for the instance files")
    return parser


def _read(path: Path | None) -> str | None:
    return None if path is None else path.read_text(encoding="utf-8")


def _load_bundle(args) -> mio.InputBundle:
    scheme = args.scheme
    table_text = None
    if scheme.startswith("table:"):
        table_text = Path(scheme[len("table:"):]).read_text(encoding="utf-8")
    elif scheme != "uniform":
        raise ParseError(f"unknown scheme {scheme!r}; expected 'uniform' or 'table:PATH'")
    multiplier = None
    if args.multiplier is not None:
        multiplier = mio.parse_rational(args.multiplier)
    return mio.load_bundle(
        edges_text=_read(args.edges),
        facets_text=_read(args.facets),
        concentrations_text=_read(args.concentrations),
        internal_text=_read(args.internal),
        scheme=scheme,
        scheme_table_text=table_text,
        max_dim=args.max_dim,
        multiplier=multiplier,
        strict=not args.non_strict,
    )


class _Sink:
    """Writes named artifacts to a directory, or the primary one to stdout."""

    def __init__(self, out_dir: Path | None):
        self.out_dir = out_dir
        if out_dir is not None:
            out_dir.mkdir(parents=True, exist_ok=True)

    def emit(self, name: str, content: str, primary: bool = False) -> None:
        if self.out_dir is None:
            if primary:
                sys.stdout.write(content)
        else:
            (self.out_dir / name).write_text(content, encoding="utf-8")

    def path(self, name: str) -> Path | None:
        return None if self.out_dir is None else self.out_dir / name


_EXT = {"text": "txt", "json": "json", "csv": "csv"}


def _cmd_infer(args) -> int:
    bundle = _load_bundle(args)
    result = infer_metaplex(
        bundle.as_graph(), bundle.concentrations, bundle.config, bundle.scheme_factory()
    )
    renderers = {"text": mio.trace_to_text, "json": mio.trace_to_json, "csv": mio.trace_to_csv}
    sink = _Sink(args.out)
    sink.emit(f"trace.{_EXT[args.format]}", renderers[args.format](result.trace, bundle.labels), primary=True)
    sink.emit("complex.json", mio.complex_to_json(result.complex, bundle.labels))
    sink.emit("weights.json", mio.assignment_to_json(result.assignment, bundle.labels))
    if sink.out_dir is not None:
        from . import plots

        plots.save_trace_figure(result.trace, bundle.labels, sink.path("trace.png"))
    return EXIT_OK


def _cmd_weights(args) -> int:
    bundle = _load_bundle(args)
    cpx = bundle.as_complex()
    assignment = extend_full(
        cpx, bundle.concentrations, bundle.scheme_factory(), scheme_name=bundle.config.scheme
    )
    renderers = {
        "text": mio.assignment_to_text,
        "json": mio.assignment_to_json,
        "csv": mio.assignment_to_csv,
    }
    sink = _Sink(args.out)
    sink.emit(f"weights.{_EXT[args.format]}", renderers[args.format](assignment, bundle.labels), primary=True)
    return EXIT_OK


def _cmd_centrality(args) -> int:
    bundle = _load_bundle(args)
    cpx = bundle.as_complex()
    assignment = extend_full(
        cpx, bundle.concentrations, bundle.scheme_factory(), scheme_name=bundle.config.scheme
    )
    report = build_report(cpx, assignment, args.q, args.alpha, incoming=args.incoming)
    renderers = {
        "text": mio.report_to_text,
        "json": mio.report_to_json,
        "csv": mio.report_to_csv,
    }
    sink = _Sink(args.out)
    sink.emit(
        f"centrality.{_EXT[args.format]}", renderers[args.format](report, bundle.labels), primary=True
    )
    if sink.out_dir is not None:
        from . import plots

        plots.save_centrality_figure(report, bundle.labels, sink.path("centrality.png"))
    return EXIT_OK


def _cmd_matrix(args) -> int:
    bundle = _load_bundle(args)
    cpx = bundle.as_complex()
    assignment = extend_full(
        cpx, bundle.concentrations, bundle.scheme_factory(), scheme_name=bundle.config.scheme
    )
    view = adjacency_matrices(cpx, assignment, args.q)
    sink = _Sink(args.out)
    sink.emit("matrix.csv", mio.matrix_to_csv(view, bundle.labels, args.weighted), primary=True)
    if sink.out_dir is not None:
        from . import plots

        plots.save_matrix_figure(view, bundle.labels, args.weighted, sink.path("matrix.png"))
    return EXIT_OK


def _cmd_validate(args) -> int:
    bundle = _load_bundle(args)
    cpx = bundle.as_complex()
    factory = bundle.scheme_factory()
    checks: list[dict] = []

    closure = validate_closure(cpx)
    checks.append(
        {
            "check": "closure",
            "ok": closure.ok,
            "detail": f"{len(closure.violations)} missing faces",
        }
    )

    schemes_ok = True
    for q in range(1, cpx.dim + 1):
        report = validate_scheme(factory(cpx, q), cpx, q)
        schemes_ok = schemes_ok and report.ok
        checks.append(
            {
                "check": f"scheme-axioms q={q}",
                "ok": report.ok,
                "detail": "; ".join(
                    f"axiom ({v.axiom}) at {v.tau}: {v.detail}" for v in report.violations
                )
                or "axioms (i)-(iii) hold",
            }
        )

    if closure.ok and schemes_ok:
        assignment = extend_full(
            cpx, bundle.concentrations, factory, scheme_name=bundle.config.scheme
        )
        for q in range(1, cpx.dim + 1):
            for validator in (
                validate_level_conservation,
                validate_facet_decomposition,
                validate_cumulative_decomposition,
            ):
                rep = validator(assignment, cpx, q)
                checks.append(
                    {
                        "check": f"{rep.name} q={q}",
                        "ok": rep.ok,
                        "detail": f"lhs={rep.lhs} rhs={rep.rhs}",
                    }
                )
        rep = validate_global_conservation(assignment, cpx)
        checks.append(
            {"check": rep.name, "ok": rep.ok, "detail": f"lhs={rep.lhs} rhs={rep.rhs}"}
        )

    ok = all(c["ok"] for c in checks)
    sink = _Sink(args.out)
    if args.format == "json":
        content = mio.dump_json({"ok": ok, "checks": checks})
    else:
        lines = [f"{'ok  ' if c['ok'] else 'FAIL'} {c['check']}: {c['detail']}" for c in checks]
        lines.append(f"{'ok  ' if ok else 'FAIL'} overall")
        content = "\n".join(lines) + "\n"
    sink.emit(f"validation.{_EXT[args.format]}", content, primary=True)
    if sink.out_dir is not None:
        sys.stdout.write("ok\n" if ok else "FAIL\n")
    return EXIT_OK if ok else EXIT_VALIDATION


def _cmd_clique(args) -> int:
    bundle = _load_bundle(args)
    cpx = clique_complex(bundle.as_graph(), args.max_dim)
    sink = _Sink(args.out)
    sink.emit("complex.json", mio.complex_to_json(cpx, bundle.labels), primary=True)
    return EXIT_OK


def _cmd_random(args) -> int:
    spec = RandomCMSpec(
        vertex_count=args.vertices,
        edge_probability=args.edge_probability,
        concentration_low=mio.parse_rational(args.conc_low),
        concentration_high=mio.parse_rational(args.conc_high),
        seed=args.seed,
    )
    graph, concentrations = generate_random_cm(spec)
    edge_lines = [f"{u} {v}" for u, v in graph.edges]
    isolated = [str(v) for v in range(graph.vertex_count) if graph.degree(v) == 0]
    conc_lines = [
        f"{v} {mio.format_rational(concentrations[v])}" for v in range(graph.vertex_count)
    ]
    sink = _Sink(args.out)
    sink.emit("edges.txt", "\n".join(edge_lines + isolated) + "\n", primary=True)
    sink.emit("concentrations.txt", "\n".join(conc_lines) + "\n")
    return EXIT_OK


_HANDLERS = {
    "infer": _cmd_infer,
    "weights": _cmd_weights,
    "centrality": _cmd_centrality,
    "matrix": _cmd_matrix,
    "validate": _cmd_validate,
    "clique": _cmd_clique,
    "random": _cmd_random,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except SchemeInvalid as exc:
        sys.stderr.write(f"validation failure: {exc}\n")
        return EXIT_VALIDATION
    except (MetaplexError, OSError, ValueError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
