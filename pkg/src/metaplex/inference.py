"""Threshold-based admission of higher-order simplices.

Starting from a weighted 1-skeleton, each dimension q >= 2 is built in
two stages: enumerate the combinatorially feasible candidates (all of
whose boundary faces already exist), then admit exactly those whose
aggregated boundary weight clears a dimension-dependent threshold.
Weights are extended onto the admitted set before the next dimension is
attempted, so admission at level q+1 sees the realised complex, not the
candidate pool.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, NamedTuple

from .complexes import Graph, Simplex, SimplicialComplex, boundary
from .concentration import (
    ConcentrationAssignment,
    SchemeFactory,
    extend_one_level,
    uniform_fractions,
)
from .errors import EmptyLevel, MissingConcentration, WeightNotAssigned


@dataclass(frozen=True)
class Candidate:
    """A feasible q-simplex together with its aggregated boundary weight."""

    simplex: Simplex
    boundary_weight: Fraction


@dataclass(frozen=True)
class InferenceConfig:
    """Knobs for the admission pipeline.

    ``threshold_multiplier`` of None means the default factor q+1 at
    dimension q; a fixed rational overrides it at every dimension, which
    is what sensitivity sweeps want.  ``strict`` picks between the
    strict rule (weight must exceed the threshold) and its closed
    variant (ties admit).
    """

    max_dim: int
    scheme: str = "uniform"
    threshold_multiplier: Fraction | None = None
    strict: bool = True

    def __post_init__(self):
        if self.max_dim < 2:
            raise ValueError("max_dim must be at least 2")
        if self.threshold_multiplier is not None and self.threshold_multiplier <= 0:
            raise ValueError("threshold_multiplier must be positive")

    def multiplier_at(self, q: int) -> Fraction:
        if self.threshold_multiplier is not None:
            return Fraction(self.threshold_multiplier)
        return Fraction(q + 1)


@dataclass(frozen=True)
class DimensionTrace:
    """Everything the admission rule saw and decided at one dimension."""

    q: int
    mean: Fraction
    multiplier: Fraction
    threshold: Fraction
    candidates: tuple[Candidate, ...]
    admitted: tuple[Simplex, ...]
    rejected: tuple[Simplex, ...]


@dataclass(frozen=True)
class InferenceTrace:
    dimensions: tuple[DimensionTrace, ...]


class InferenceResult(NamedTuple):
    complex: SimplicialComplex
    assignment: ConcentrationAssignment
    trace: InferenceTrace


def enumerate_candidates(cpx: SimplicialComplex, q: int) -> tuple[Simplex, ...]:
    """All feasible q-simplices: vertex sets of size q+1 whose complete
    boundary already lies in the complex, lexicographically ordered.
    Simplices the complex already contains are not candidates again."""
    if q < 2:
        raise ValueError("candidate enumeration starts at dimension 2")
    lower = set(cpx.level(q - 1))
    if not lower:
        return ()
    existing = set(cpx.level(q))
    found: set[Simplex] = set()
    for tau in lower:
        # tau is the candidate's face missing its largest vertex, so each
        # candidate is generated exactly once.
        for v in range(tau[-1] + 1, cpx.vertex_count):
            sigma = tau + (v,)
            if sigma in existing or sigma in found:
                continue
            if all(f in lower for f in combinations(sigma, q)):
                found.add(sigma)
    return tuple(sorted(found))


def aggregated_boundary_weight(simplex: Simplex, weights: Mapping[Simplex, Fraction]) -> Fraction:
    """Sum of the weights of the candidate's codimension-1 faces."""
    total = Fraction(0)
    for tau in boundary(simplex):
        if tau not in weights:
            raise WeightNotAssigned(f"no weight assigned to boundary face {tau}")
        total += weights[tau]
    return total


def _weights_of(assignment) -> Mapping[Simplex, Fraction]:
    return assignment.weights if isinstance(assignment, ConcentrationAssignment) else assignment


def threshold(assignment, cpx: SimplicialComplex, q: int, config: InferenceConfig) -> Fraction:
    """Dimension-q admission threshold: multiplier times the mean weight
    one level down."""
    level = cpx.level(q - 1)
    if not level:
        raise EmptyLevel(f"no simplices at dimension {q - 1}")
    w = _weights_of(assignment)
    mean = sum((w[s] for s in level), Fraction(0)) / len(level)
    return config.multiplier_at(q) * mean


def admit(
    candidates: tuple[Simplex, ...],
    assignment,
    cpx: SimplicialComplex,
    q: int,
    config: InferenceConfig,
) -> tuple[tuple[Simplex, ...], DimensionTrace]:
    """Apply the inclusion rule at dimension q and record the decision."""
    w = _weights_of(assignment)
    level = cpx.level(q - 1)
    if not level:
        raise EmptyLevel(f"no simplices at dimension {q - 1}")
    mean = sum((w[s] for s in level), Fraction(0)) / len(level)
    multiplier = config.multiplier_at(q)
    theta = multiplier * mean
    scored = tuple(Candidate(s, aggregated_boundary_weight(s, w)) for s in candidates)
    if config.strict:
        admitted = tuple(c.simplex for c in scored if c.boundary_weight > theta)
    else:
        admitted = tuple(c.simplex for c in scored if c.boundary_weight >= theta)
    admitted_set = set(admitted)
    rejected = tuple(c.simplex for c in scored if c.simplex not in admitted_set)
    entry = DimensionTrace(
        q=q,
        mean=mean,
        multiplier=multiplier,
        threshold=theta,
        candidates=scored,
        admitted=admitted,
        rejected=rejected,
    )
    return admitted, entry


def infer_metaplex(
    graph: Graph,
    concentrations: Mapping[int, Fraction],
    config: InferenceConfig,
    scheme_factory: SchemeFactory = uniform_fractions,
) -> InferenceResult:
    """Build a concentration-weighted complex from a weighted graph.

    The vertices and edges of the graph seed the complex; edge weights
    come from splitting each vertex's concentration over its incident
    edges via the scheme.  Dimensions 2..max_dim are then admitted and
    weighted in turn.  The loop stops early once a dimension produces no
    candidates or admits nothing, since nothing above it can ever become
    feasible.
    """
    missing = [v for v in range(graph.vertex_count) if v not in concentrations]
    if missing:
        raise MissingConcentration(missing)
    cpx = SimplicialComplex.from_graph(graph)
    weights: dict[Simplex, Fraction] = {}
    for v in range(graph.vertex_count):
        c = Fraction(concentrations[v])
        if c <= 0:
            raise ValueError(f"concentration of vertex {v} must be positive, got {c}")
        weights[(v,)] = c
    if cpx.dim >= 1:
        weights.update(extend_one_level(cpx, weights, scheme_factory(cpx, 1)))

    entries: list[DimensionTrace] = []
    q = 2
    while q <= config.max_dim and cpx.level(q - 1):
        candidates = enumerate_candidates(cpx, q)
        admitted, entry = admit(candidates, weights, cpx, q, config)
        entries.append(entry)
        if not admitted:
            break
        for simplex in admitted:
            cpx.insert(simplex)
        weights.update(extend_one_level(cpx, weights, scheme_factory(cpx, q)))
        q += 1

    assignment = ConcentrationAssignment(weights=weights, scheme=config.scheme)
    return InferenceResult(cpx, assignment, InferenceTrace(tuple(entries)))
