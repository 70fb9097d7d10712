"""File formats, input bundling, and deterministic serialisation.

Topology arrives either as a whitespace-separated edge list (raw data)
or as a JSON document listing facets (a complex; closure is applied on
load).  Concentrations are two-column text, or a JSON map of internal
structures that is reduced to totals on load.  Vertex labels in input
files may be arbitrary non-negative integers; they are remapped to dense
ids internally and the remapping table rides along so every output is
rendered with the caller's own labels.

Rationals serialise as exact ``p/q`` strings in lowest terms and parse
back exactly; reals serialise with 12 significant digits.  All output
is byte-deterministic for identical inputs.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .centrality import UNREACHABLE, AdjacencyView, CentralityReport
from .complexes import Graph, Simplex, SimplicialComplex
from .concentration import (
    ConcentrationAssignment,
    InternalStructure,
    SchemeFactory,
    concentration_from_internal,
    table_scheme,
    uniform_fractions,
)
from .errors import MissingConcentration, ParseError, SchemeAxiomViolation
from .inference import InferenceConfig, InferenceTrace

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(token: str, line: int | None = None) -> Fraction:
    """Exact rational from an integer or ``p/q`` literal."""
    if not _RATIONAL_RE.match(token):
        raise ParseError(f"not a rational literal: {token!r}", line=line)
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {token!r}", line=line) from None


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def format_real(value) -> str:
    x = float(value)
    if x == UNREACHABLE:
        return "inf"
    return format(x, ".12g")


def simplex_label(simplex: Simplex, labels: tuple[int, ...]) -> str:
    return "-".join(str(labels[v]) for v in simplex)


def parse_simplex_label(text: str, label_to_dense: Mapping[int, int]) -> Simplex:
    try:
        return tuple(sorted(label_to_dense[int(tok)] for tok in text.split("-")))
    except (KeyError, ValueError):
        raise ParseError(f"bad simplex label {text!r}") from None


def parse_edge_list(text: str) -> tuple[Graph, tuple[int, ...]]:
    """Whitespace-separated vertex pairs, one edge per line.

    A line with a single token declares an isolated vertex; ``#`` starts
    a comment.  Labels may be sparse; they are remapped to dense ids.
    """
    pairs: list[tuple[int, int]] = []
    singles: list[int] = []
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) not in (1, 2):
            raise ParseError(f"expected 1 or 2 vertex ids, got {len(tokens)}", line=lineno)
        try:
            ids = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-integer vertex id in {line!r}", line=lineno) from None
        if any(v < 0 for v in ids):
            raise ParseError(f"negative vertex id in {line!r}", line=lineno)
        if len(ids) == 1:
            singles.append(ids[0])
        else:
            if ids[0] == ids[1]:
                raise ParseError(f"loop at vertex {ids[0]} is not a simple edge", line=lineno)
            pairs.append((ids[0], ids[1]))
        seen.update(ids)
    labels = tuple(sorted(seen))
    dense = {label: i for i, label in enumerate(labels)}
    graph = Graph(len(labels))
    for u, v in pairs:
        graph.add_edge(dense[u], dense[v])
    return graph, labels


def parse_facets_json(text: str) -> tuple[SimplicialComplex, tuple[int, ...]]:
    """JSON document listing facets; closure is applied on load.

    Accepts ``{"facets": [[...], ...]}`` plus either an explicit
    ``"vertices"`` list (which may include isolated vertices) or a
    ``"vertex_count"`` for dense 0-based labelling.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict) or "facets" not in doc:
        raise ParseError("expected a JSON object with a 'facets' list")
    facets = doc["facets"]
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise ParseError("'facets' must be a list of vertex lists")
    used: set[int] = set()
    for f in facets:
        for v in f:
            if not isinstance(v, int) or v < 0:
                raise ParseError(f"bad vertex id {v!r} in facet {f}")
            used.add(v)
    if "vertices" in doc:
        declared = doc["vertices"]
        if not isinstance(declared, list) or not all(isinstance(v, int) for v in declared):
            raise ParseError("'vertices' must be a list of integer labels")
        extra = used - set(declared)
        if extra:
            raise ParseError(f"facets mention undeclared vertices {sorted(extra)}")
        labels = tuple(sorted(set(declared)))
    elif "vertex_count" in doc:
        n = doc["vertex_count"]
        if not isinstance(n, int) or n < 0:
            raise ParseError("'vertex_count' must be a non-negative integer")
        out_of_range = [v for v in used if v >= n]
        if out_of_range:
            raise ParseError(f"facet vertices {sorted(out_of_range)} exceed vertex_count {n}")
        labels = tuple(range(n))
    else:
        labels = tuple(sorted(used))
    dense = {label: i for i, label in enumerate(labels)}
    cpx = SimplicialComplex(len(labels))
    for v in labels:
        cpx.insert((dense[v],))
    for f in facets:
        cpx.insert(tuple(dense[v] for v in f))
    return cpx, labels


def parse_concentrations(text: str, labels: tuple[int, ...]) -> dict[int, Fraction]:
    """Two-column ``vertex rational`` lines keyed by original labels."""
    dense = {label: i for i, label in enumerate(labels)}
    out: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 'vertex rational', got {line!r}", line=lineno)
        try:
            label = int(tokens[0])
        except ValueError:
            raise ParseError(f"non-integer vertex id {tokens[0]!r}", line=lineno) from None
        if label not in dense:
            raise ParseError(f"vertex {label} does not appear in the topology", line=lineno)
        v = dense[label]
        if v in out:
            raise ParseError(f"duplicate concentration for vertex {label}", line=lineno)
        value = parse_rational(tokens[1], line=lineno)
        if value <= 0:
            raise ParseError(f"concentration must be positive, got {tokens[1]}", line=lineno)
        out[v] = value
    return out


def parse_internal_structures(text: str, labels: tuple[int, ...]) -> dict[int, Fraction]:
    """JSON map vertex -> [[element, rational], ...]; each structure is
    reduced to its total weight (the vertex's concentration) on load."""
    dense = {label: i for i, label in enumerate(labels)}
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object mapping vertex to element list")
    out: dict[int, Fraction] = {}
    for key, elements in doc.items():
        try:
            label = int(key)
        except ValueError:
            raise ParseError(f"non-integer vertex key {key!r}") from None
        if label not in dense:
            raise ParseError(f"vertex {label} does not appear in the topology")
        if not isinstance(elements, list):
            raise ParseError(f"internal structure of vertex {label} must be a list")
        weights: dict[str, Fraction] = {}
        for item in elements:
            if not (isinstance(item, list) and len(item) == 2):
                raise ParseError(f"bad element entry {item!r} for vertex {label}")
            name, value = item
            if str(name) in weights:
                raise ParseError(f"duplicate element {name!r} for vertex {label}")
            weights[str(name)] = parse_rational(str(value))
        out[dense[label]] = concentration_from_internal(InternalStructure(weights))
    return out


def parse_scheme_table(text: str, labels: tuple[int, ...]) -> dict[tuple[Simplex, Simplex], Fraction]:
    """JSON array of ``{"tau": [...], "sigma": [...], "fraction": "p/q"}``.

    Entries off the incidence relation, fractions outside (0, 1], and
    duplicate pairs are rejected eagerly, before any weight is computed.
    """
    dense = {label: i for i, label in enumerate(labels)}
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, list):
        raise ParseError("expected a JSON array of table entries")
    table: dict[tuple[Simplex, Simplex], Fraction] = {}
    for entry in doc:
        if not isinstance(entry, dict) or not {"tau", "sigma", "fraction"} <= set(entry):
            raise ParseError(f"table entry needs tau, sigma and fraction: {entry!r}")
        try:
            tau = tuple(sorted(dense[int(v)] for v in entry["tau"]))
            sigma = tuple(sorted(dense[int(v)] for v in entry["sigma"]))
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"table entry references unknown vertices: {entry!r}") from None
        fraction = parse_rational(str(entry["fraction"]))
        if len(sigma) != len(tau) + 1 or not set(tau) < set(sigma):
            raise SchemeAxiomViolation(
                f"table entry ({tau}, {sigma}) is off the incidence relation"
            )
        if not 0 < fraction <= 1:
            raise SchemeAxiomViolation(
                f"table fraction {fraction} for ({tau}, {sigma}) outside (0, 1]"
            )
        if (tau, sigma) in table:
            raise SchemeAxiomViolation(f"duplicate table entry for ({tau}, {sigma})")
        table[(tau, sigma)] = fraction
    return table


@dataclass(frozen=True)
class InputBundle:
    """Validated inputs: one topology, full concentrations, a scheme."""

    labels: tuple[int, ...]
    graph: Graph | None
    complex_: SimplicialComplex | None
    concentrations: dict[int, Fraction]
    scheme_table: dict[tuple[Simplex, Simplex], Fraction] | None
    config: InferenceConfig

    @property
    def is_graph(self) -> bool:
        return self.graph is not None

    def as_complex(self) -> SimplicialComplex:
        """The topology as a complex (an edge list is its own 1-complex)."""
        if self.complex_ is not None:
            return self.complex_
        return SimplicialComplex.from_graph(self.graph)

    def as_graph(self) -> Graph:
        """The topology's 1-skeleton as a graph."""
        if self.graph is not None:
            return self.graph
        return self.complex_.one_skeleton_graph()

    def scheme_factory(self) -> SchemeFactory:
        if self.scheme_table is not None:
            return table_scheme(self.scheme_table)
        return uniform_fractions


def load_bundle(
    edges_text: str | None = None,
    facets_text: str | None = None,
    concentrations_text: str | None = None,
    internal_text: str | None = None,
    scheme: str = "uniform",
    scheme_table_text: str | None = None,
    max_dim: int = 3,
    multiplier: Fraction | None = None,
    strict: bool = True,
) -> InputBundle:
    """Assemble and validate an input bundle from raw file contents."""
    if (edges_text is None) == (facets_text is None):
        raise ParseError("exactly one topology source (edge list or facets) is required")
    if (concentrations_text is None) == (internal_text is None):
        raise ParseError("exactly one concentration source is required")

    graph = None
    cpx = None
    if edges_text is not None:
        graph, labels = parse_edge_list(edges_text)
        vertex_count = graph.vertex_count
    else:
        cpx, labels = parse_facets_json(facets_text)
        vertex_count = cpx.vertex_count

    if concentrations_text is not None:
        concentrations = parse_concentrations(concentrations_text, labels)
    else:
        concentrations = parse_internal_structures(internal_text, labels)
    missing = [labels[v] for v in range(vertex_count) if v not in concentrations]
    if missing:
        raise MissingConcentration(missing)

    table = None
    if scheme_table_text is not None:
        table = parse_scheme_table(scheme_table_text, labels)
    config = InferenceConfig(
        max_dim=max_dim,
        scheme=scheme,
        threshold_multiplier=multiplier,
        strict=strict,
    )
    return InputBundle(
        labels=labels,
        graph=graph,
        complex_=cpx,
        concentrations=concentrations,
        scheme_table=table,
        config=config,
    )


# ---------------------------------------------------------------------------
# serialisation


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def complex_to_json(cpx: SimplicialComplex, labels: tuple[int, ...]) -> str:
    """Facet-list document; reloading reproduces the complex exactly."""
    obj = {
        "vertex_count": len(labels),
        "vertices": list(labels),
        "facets": [[labels[v] for v in facet] for facet in cpx.facets()],
    }
    return dump_json(obj)


def assignment_to_text(assignment: ConcentrationAssignment, labels: tuple[int, ...]) -> str:
    lines = []
    for simplex in sorted(assignment.weights, key=lambda s: (len(s), s)):
        lines.append(f"{simplex_label(simplex, labels)} {format_rational(assignment[simplex])}")
    return "\n".join(lines) + "\n"


def assignment_to_csv(assignment: ConcentrationAssignment, labels: tuple[int, ...]) -> str:
    rows = ["simplex,weight"]
    for simplex in sorted(assignment.weights, key=lambda s: (len(s), s)):
        rows.append(f"{simplex_label(simplex, labels)},{format_rational(assignment[simplex])}")
    return "\n".join(rows) + "\n"


def assignment_to_json(assignment: ConcentrationAssignment, labels: tuple[int, ...]) -> str:
    weights = {
        simplex_label(s, labels): format_rational(assignment[s])
        for s in sorted(assignment.weights, key=lambda s: (len(s), s))
    }
    return dump_json({"scheme": assignment.scheme, "weights": weights})


def parse_assignment_json(text: str, labels: tuple[int, ...]) -> ConcentrationAssignment:
    dense = {label: i for i, label in enumerate(labels)}
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    weights = {
        parse_simplex_label(key, dense): parse_rational(str(value))
        for key, value in doc.get("weights", {}).items()
    }
    return ConcentrationAssignment(weights=weights, scheme=doc.get("scheme", "uniform"))


def trace_to_json_obj(trace: InferenceTrace, labels: tuple[int, ...]) -> dict:
    dims = []
    for entry in trace.dimensions:
        dims.append(
            {
                "q": entry.q,
                "mean": format_rational(entry.mean),
                "multiplier": format_rational(entry.multiplier),
                "threshold": format_rational(entry.threshold),
                "candidates": [
                    {
                        "simplex": simplex_label(c.simplex, labels),
                        "boundary_weight": format_rational(c.boundary_weight),
                    }
                    for c in entry.candidates
                ],
                "admitted": [simplex_label(s, labels) for s in entry.admitted],
                "rejected": [simplex_label(s, labels) for s in entry.rejected],
            }
        )
    return {"dimensions": dims}


def trace_to_json(trace: InferenceTrace, labels: tuple[int, ...]) -> str:
    return dump_json(trace_to_json_obj(trace, labels))


def trace_to_text(trace: InferenceTrace, labels: tuple[int, ...]) -> str:
    lines = []
    for entry in trace.dimensions:
        lines.append(
            f"q={entry.q}: candidates={len(entry.candidates)} "
            f"mean={format_rational(entry.mean)} "
            f"multiplier={format_rational(entry.multiplier)} "
            f"threshold={format_rational(entry.threshold)}"
        )
        admitted = set(entry.admitted)
        for c in entry.candidates:
            verdict = "admit" if c.simplex in admitted else "reject"
            lines.append(
                f"  {verdict} {simplex_label(c.simplex, labels)} "
                f"W={format_rational(c.boundary_weight)}"
            )
    if not lines:
        lines.append("no dimensions attempted (empty or edgeless 1-skeleton)")
    return "\n".join(lines) + "\n"


def trace_to_csv(trace: InferenceTrace, labels: tuple[int, ...]) -> str:
    rows = ["q,simplex,boundary_weight,mean,multiplier,threshold,admitted"]
    for entry in trace.dimensions:
        admitted = set(entry.admitted)
        for c in entry.candidates:
            rows.append(
                ",".join(
                    [
                        str(entry.q),
                        simplex_label(c.simplex, labels),
                        format_rational(c.boundary_weight),
                        format_rational(entry.mean),
                        format_rational(entry.multiplier),
                        format_rational(entry.threshold),
                        "true" if c.simplex in admitted else "false",
                    ]
                )
            )
    return "\n".join(rows) + "\n"


_REPORT_COLUMNS = ("simplex", "k", "D", "D_alpha", "CC_alpha", "HC_alpha", "component", "farness")


def report_rows(report: CentralityReport, labels: tuple[int, ...]) -> list[tuple[str, ...]]:
    rows = []
    for r in report.rows:
        rows.append(
            (
                simplex_label(r.simplex, labels),
                str(r.degree),
                format_rational(r.weighted_degree),
                format_real(r.combined_degree),
                format_real(r.closeness),
                format_real(r.harmonic),
                str(r.component),
                format_real(r.farness),
            )
        )
    return rows


def report_to_csv(report: CentralityReport, labels: tuple[int, ...]) -> str:
    out = [",".join(_REPORT_COLUMNS)]
    out.extend(",".join(row) for row in report_rows(report, labels))
    return "\n".join(out) + "\n"


def report_to_text(report: CentralityReport, labels: tuple[int, ...]) -> str:
    rows = [_REPORT_COLUMNS, *report_rows(report, labels)]
    widths = [max(len(row[i]) for row in rows) for i in range(len(_REPORT_COLUMNS))]
    direction = "incoming" if report.incoming else "outgoing"
    lines = [f"centrality report: q={report.q} alpha={format_real(report.alpha)} ({direction})"]
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def report_to_json(report: CentralityReport, labels: tuple[int, ...]) -> str:
    rows = [
        {
            "simplex": simplex_label(r.simplex, labels),
            "k": r.degree,
            "D": format_rational(r.weighted_degree),
            "D_alpha": format_real(r.combined_degree),
            "CC_alpha": format_real(r.closeness),
            "HC_alpha": format_real(r.harmonic),
            "component": r.component,
            "farness": format_real(r.farness),
        }
        for r in report.rows
    ]
    obj = {
        "q": report.q,
        "alpha": format_real(report.alpha),
        "incoming": report.incoming,
        "rows": rows,
    }
    return dump_json(obj)


def matrix_to_csv(view: AdjacencyView, labels: tuple[int, ...], weighted: bool) -> str:
    names = [simplex_label(s, labels) for s in view.order]
    rows = ["simplex," + ",".join(names)]
    for i, name in enumerate(names):
        if weighted:
            cells = [format_rational(x) for x in view.strengths[i]]
        else:
            cells = [str(x) for x in view.binary[i]]
        rows.append(name + "," + ",".join(cells))
    return "\n".join(rows) + "\n"
