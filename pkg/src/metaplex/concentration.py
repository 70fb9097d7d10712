"""Vertex concentrations and their exact propagation to higher simplices.

Concentrations start life on vertices and climb the complex one
dimension at a time: each (q-1)-simplex splits its weight among the
q-simplices containing it according to a fractional contribution scheme,
and a q-simplex's weight is the sum of what its boundary faces send it.
Every weight in this module is a `fractions.Fraction`: the conservation
statements proved for this construction are exact identities, and they
get zero tolerance here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping

from .complexes import Simplex, SimplicialComplex, boundary
from .errors import (
    AllZeroWeights,
    MissingConcentration,
    SchemeInvalid,
    WeightNotAssigned,
)

SchemeFactory = Callable[[SimplicialComplex, int], "LevelFractions"]


@dataclass(frozen=True)
class InternalStructure:
    """Finite weighted element set carried by one vertex.

    ``weights`` maps opaque element labels to non-negative rationals; at
    least one element must weigh more than zero.
    """

    weights: Mapping[str, Fraction]


def concentration_from_internal(structure: InternalStructure) -> Fraction:
    """Total weight of a vertex's internal elements (its concentration)."""
    total = Fraction(0)
    for label, w in structure.weights.items():
        w = Fraction(w)
        if w < 0:
            raise ValueError(f"internal element {label!r} has negative weight {w}")
        total += w
    if total <= 0:
        raise AllZeroWeights("internal structure has no positive weight")
    return total


@dataclass(frozen=True)
class LevelFractions:
    """A fractional contribution map restricted to one level.

    ``entries`` holds every (face, coface) pair the scheme assigns mass
    to; absent pairs are implicitly zero.  A valid scheme at level q
    satisfies, over ``S_{q-1} x S_q``:

      (i)   zero off the incidence relation,
      (ii)  a fraction in (0, 1] on every incident pair,
      (iii) fractions over the cofaces of any non-maximal (q-1)-simplex
            summing to exactly 1.
    """

    q: int
    kind: str
    entries: Mapping[tuple[Simplex, Simplex], Fraction]

    def fraction(self, tau: Simplex, sigma: Simplex) -> Fraction:
        return self.entries.get((tau, sigma), Fraction(0))


def uniform_fractions(cpx: SimplicialComplex, q: int) -> LevelFractions:
    """The uniform scheme: each covered (q-1)-simplex sends 1/k to each
    of its k cofaces.  Simplices with no coface send nothing."""
    if q < 1:
        raise ValueError("contribution maps start at level 1")
    cofaces: dict[Simplex, list[Simplex]] = {}
    for sigma in cpx.level(q):
        for tau in boundary(sigma):
            cofaces.setdefault(tau, []).append(sigma)
    entries: dict[tuple[Simplex, Simplex], Fraction] = {}
    for tau in sorted(cofaces):
        share = Fraction(1, len(cofaces[tau]))
        for sigma in cofaces[tau]:
            entries[(tau, sigma)] = share
    return LevelFractions(q=q, kind="uniform", entries=entries)


def table_fractions(
    cpx: SimplicialComplex,
    q: int,
    table: Mapping[tuple[Simplex, Simplex], Fraction],
) -> LevelFractions:
    """View of an explicit fraction table at level ``q``.

    The slice keeps whatever the table says for pairs of the right
    dimensions; `validate_scheme` is the arbiter of whether that slice
    is actually lawful against a given complex.
    """
    if q < 1:
        raise ValueError("contribution maps start at level 1")
    entries = {
        (tau, sigma): Fraction(f)
        for (tau, sigma), f in table.items()
        if len(tau) == q and len(sigma) == q + 1
    }
    return LevelFractions(q=q, kind="table", entries=dict(sorted(entries.items())))


def table_scheme(table: Mapping[tuple[Simplex, Simplex], Fraction]) -> SchemeFactory:
    """Wrap an explicit table as a scheme factory for `extend_full`."""

    def factory(cpx: SimplicialComplex, q: int) -> LevelFractions:
        return table_fractions(cpx, q, table)

    return factory


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    tau: Simplex
    sigma: Simplex | None
    detail: str


@dataclass(frozen=True)
class SchemeReport:
    q: int
    violations: tuple[AxiomViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_scheme(scheme: LevelFractions, cpx: SimplicialComplex, q: int) -> SchemeReport:
    """Check a scheme against all three axioms with exact arithmetic."""
    faces = set(cpx.level(q - 1))
    cofaces = cpx.level(q)
    coface_set = set(cofaces)
    violations: list[AxiomViolation] = []

    for (tau, sigma), f in sorted(scheme.entries.items()):
        if f == 0:
            continue
        if tau not in faces or sigma not in coface_set or not set(tau) < set(sigma):
            violations.append(
                AxiomViolation("i", tau, sigma, f"nonzero fraction {f} off the incidence relation")
            )

    row_sums: dict[Simplex, Fraction] = {}
    for sigma in cofaces:
        for tau in boundary(sigma):
            f = scheme.fraction(tau, sigma)
            if not 0 < f <= 1:
                violations.append(AxiomViolation("ii", tau, sigma, f"fraction {f} outside (0, 1]"))
            row_sums[tau] = row_sums.get(tau, Fraction(0)) + f

    # Row sums are only constrained where the upper degree is nonzero,
    # which is exactly the set of keys collected above.
    for tau in sorted(row_sums):
        if row_sums[tau] != 1:
            violations.append(
                AxiomViolation("iii", tau, None, f"fractions over cofaces sum to {row_sums[tau]}, not 1")
            )
    return SchemeReport(q=q, violations=tuple(violations))


def contribution_number(
    scheme: LevelFractions,
    tau: Simplex,
    sigma: Simplex,
    weights: Mapping[Simplex, Fraction],
) -> Fraction:
    """Absolute amount of ``tau``'s weight routed to its coface ``sigma``."""
    if tau not in weights:
        raise WeightNotAssigned(f"no weight assigned to {tau}")
    return scheme.fraction(tau, sigma) * weights[tau]


def extend_one_level(
    cpx: SimplicialComplex,
    weights: Mapping[Simplex, Fraction],
    scheme: LevelFractions,
) -> dict[Simplex, Fraction]:
    """Push weights from ``S_{q-1}`` onto ``S_q`` through ``scheme``.

    The scheme is validated first; a lawful scheme guarantees that the
    new level's total equals the total over the non-maximal
    (q-1)-simplices, exactly.
    """
    q = scheme.q
    report = validate_scheme(scheme, cpx, q)
    if not report.ok:
        first = report.violations[0]
        raise SchemeInvalid(
            f"scheme invalid at level {q}: axiom ({first.axiom}) {first.detail}", report
        )
    for tau in cpx.level(q - 1):
        if tau not in weights:
            raise WeightNotAssigned(f"no weight assigned to {tau}")
    out: dict[Simplex, Fraction] = {}
    for sigma in cpx.level(q):
        out[sigma] = sum(
            (scheme.fraction(tau, sigma) * weights[tau] for tau in boundary(sigma)),
            Fraction(0),
        )
    return out


@dataclass(frozen=True)
class ConcentrationAssignment:
    """Exact weight for every simplex of a complex, plus the scheme used."""

    weights: Mapping[Simplex, Fraction]
    scheme: str = "uniform"

    def __getitem__(self, simplex: Simplex) -> Fraction:
        try:
            return self.weights[tuple(simplex)]
        except KeyError:
            raise WeightNotAssigned(f"no weight assigned to {tuple(simplex)}") from None

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self.weights

    def get(self, simplex, default=None):
        return self.weights.get(tuple(simplex), default)

    def items(self):
        return self.weights.items()

    def level_total(self, cpx: SimplicialComplex, q: int) -> Fraction:
        return sum((self[s] for s in cpx.level(q)), Fraction(0))


def extend_full(
    cpx: SimplicialComplex,
    concentrations: Mapping[int, Fraction],
    scheme_factory: SchemeFactory = uniform_fractions,
    scheme_name: str | None = None,
) -> ConcentrationAssignment:
    """Extend vertex concentrations level by level over the whole complex.

    Every vertex of the complex must carry a strictly positive
    concentration; defaults would silently change the facet totals.
    """
    missing = [v for (v,) in cpx.level(0) if v not in concentrations]
    if missing:
        raise MissingConcentration(missing)
    weights: dict[Simplex, Fraction] = {}
    for (v,) in cpx.level(0):
        c = Fraction(concentrations[v])
        if c <= 0:
            raise ValueError(f"concentration of vertex {v} must be positive, got {c}")
        weights[(v,)] = c
    name = scheme_name
    for q in range(1, cpx.dim + 1):
        scheme = scheme_factory(cpx, q)
        if name is None:
            name = scheme.kind
        weights.update(extend_one_level(cpx, weights, scheme))
    return ConcentrationAssignment(weights=weights, scheme=name or "uniform")


def compose_schemes(
    lower: LevelFractions,
    upper: LevelFractions,
    cpx: SimplicialComplex,
) -> dict[tuple[Simplex, Simplex], Fraction]:
    """Compose consecutive contribution maps into a two-level map.

    The composed value on (tau, sigma) sums, over the intermediate
    q-simplices rho, upper(rho, sigma) * lower(tau, rho).  Only pairs
    with tau contained in sigma are stored; everything else is zero
    because some factor in every summand vanishes.
    """
    q = lower.q
    if upper.q != q + 1:
        raise ValueError(f"schemes are not consecutive: levels {lower.q} and {upper.q}")
    for view in (lower, upper):
        report = validate_scheme(view, cpx, view.q)
        if not report.ok:
            raise SchemeInvalid(f"scheme invalid at level {view.q}", report)
    composed: dict[tuple[Simplex, Simplex], Fraction] = {}
    for sigma in cpx.level(q + 1):
        for tau in combinations(sigma, q):
            members = set(tau)
            total = Fraction(0)
            for rho in combinations(sigma, q + 1):
                if members.issubset(rho):
                    total += upper.fraction(rho, sigma) * lower.fraction(tau, rho)
            composed[(tau, sigma)] = total
    return composed


@dataclass(frozen=True)
class ConservationReport:
    """Outcome of one exact conservation identity, with both sides kept."""

    name: str
    q: int | None
    lhs: Fraction
    rhs: Fraction
    detail: str

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def _weight_lookup(assignment) -> Mapping[Simplex, Fraction]:
    return assignment.weights if isinstance(assignment, ConcentrationAssignment) else assignment


def validate_level_conservation(assignment, cpx: SimplicialComplex, q: int) -> ConservationReport:
    """Total weight at level q versus the non-maximal weight at level q-1."""
    w = _weight_lookup(assignment)
    facet_set = set(cpx.facets())
    lhs = sum((w[s] for s in cpx.level(q)), Fraction(0))
    rhs = sum((w[s] for s in cpx.level(q - 1) if s not in facet_set), Fraction(0))
    return ConservationReport(
        "level-conservation", q, lhs, rhs,
        f"sum over S_{q} vs sum over non-facet S_{q - 1}",
    )


def validate_facet_decomposition(assignment, cpx: SimplicialComplex, q: int) -> ConservationReport:
    """Level-q total plus the (q-1)-dimensional facet weight equals the
    full level-(q-1) total."""
    w = _weight_lookup(assignment)
    facet_set = set(cpx.facets())
    lhs = sum((w[s] for s in cpx.level(q)), Fraction(0))
    lhs += sum((w[s] for s in cpx.level(q - 1) if s in facet_set), Fraction(0))
    rhs = sum((w[s] for s in cpx.level(q - 1)), Fraction(0))
    return ConservationReport(
        "facet-decomposition", q, lhs, rhs,
        f"sum over S_{q} plus (q-1)-facets vs sum over S_{q - 1}",
    )


def validate_cumulative_decomposition(assignment, cpx: SimplicialComplex, q: int) -> ConservationReport:
    """Level-q total plus all facets of dimension below q equals the
    vertex total."""
    w = _weight_lookup(assignment)
    lhs = sum((w[s] for s in cpx.level(q)), Fraction(0))
    lhs += sum((w[s] for s in cpx.facets() if len(s) - 1 < q), Fraction(0))
    rhs = sum((w[s] for s in cpx.level(0)), Fraction(0))
    return ConservationReport(
        "cumulative-decomposition", q, lhs, rhs,
        f"sum over S_{q} plus facets of dim < {q} vs sum over S_0",
    )


def validate_global_conservation(assignment, cpx: SimplicialComplex) -> ConservationReport:
    """Total facet weight equals total vertex concentration."""
    w = _weight_lookup(assignment)
    lhs = sum((w[s] for s in cpx.facets()), Fraction(0))
    rhs = sum((w[s] for s in cpx.level(0)), Fraction(0))
    return ConservationReport(
        "global-conservation", None, lhs, rhs,
        "sum over facets vs sum over S_0",
    )
