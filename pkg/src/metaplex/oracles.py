"""Brute-force references and seeded instance generation.

Everything in this module re-derives its answer from first principles:
pairwise inclusion scans, recursive nested sums, exhaustive path
enumeration.  None of it calls the algorithms it exists to check; the
only shared vocabulary is the domain types themselves.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .centrality import AdjacencyView
from .complexes import Graph, Simplex, SimplicialComplex
from .errors import InstanceTooLarge

MAX_ORACLE_SIMPLICES = 1024
MAX_ORACLE_LEVEL = 12


@dataclass(frozen=True)
class RandomCMSpec:
    """Seeded recipe for one random instance; equal specs, equal output."""

    vertex_count: int
    edge_probability: float
    concentration_low: Fraction
    concentration_high: Fraction
    seed: int
    max_dim: int = 3

    def __post_init__(self):
        if not 1 <= self.vertex_count <= 10:
            raise InstanceTooLarge(f"vertex_count {self.vertex_count} outside 1..10")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise ValueError("edge_probability must lie in [0, 1]")
        if self.concentration_low <= 0 or self.concentration_high < self.concentration_low:
            raise ValueError("concentration interval must be positive and ordered")


def generate_random_cm(spec: RandomCMSpec) -> tuple[Graph, dict[int, Fraction]]:
    """Sample a simple graph and positive rational concentrations.

    Concentrations use bounded denominators (at most 64, grown only if
    the interval is too narrow to hit) so exact arithmetic stays fast in
    bulk tests.
    """
    rng = random.Random(spec.seed)
    n = spec.vertex_count
    graph = Graph(n)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < spec.edge_probability:
                graph.add_edge(i, j)
    concentrations: dict[int, Fraction] = {}
    lo, hi = Fraction(spec.concentration_low), Fraction(spec.concentration_high)
    for v in range(n):
        den = rng.randint(1, 64)
        num_min, num_max = _numerator_range(lo, hi, den)
        while num_min > num_max:
            den *= 2
            if den > 1 << 20:
                raise ValueError("concentration interval too narrow to sample")
            num_min, num_max = _numerator_range(lo, hi, den)
        concentrations[v] = Fraction(rng.randint(num_min, num_max), den)
    return graph, concentrations


def _numerator_range(lo: Fraction, hi: Fraction, den: int) -> tuple[int, int]:
    return math.ceil(lo * den), math.floor(hi * den)


def oracle_facets(cpx: SimplicialComplex) -> tuple[Simplex, ...]:
    """Maximal simplices by a pairwise inclusion scan."""
    sims = list(cpx.simplices())
    if len(sims) > MAX_ORACLE_SIMPLICES:
        raise InstanceTooLarge(f"{len(sims)} simplices exceed the oracle guard")
    out = []
    for s in sims:
        members = set(s)
        if not any(t != s and members < set(t) for t in sims):
            out.append(s)
    return tuple(sorted(out))


def oracle_extend(
    cpx: SimplicialComplex,
    concentrations: Mapping[int, Fraction],
    table: Mapping[tuple[Simplex, Simplex], Fraction] | None = None,
) -> dict[Simplex, Fraction]:
    """Weights by direct evaluation of the nested contribution sums.

    Each simplex's weight is recomputed recursively all the way down to
    the vertices, with no per-level caching; uniform fractions are
    re-derived inline from coface counts.  Exponential, but the guard
    keeps it honest.
    """
    if cpx.simplex_count() > MAX_ORACLE_SIMPLICES:
        raise InstanceTooLarge("complex exceeds the oracle guard")

    def frac(tau: Simplex, sigma: Simplex) -> Fraction:
        if table is not None:
            return table.get((tau, sigma), Fraction(0))
        members = set(tau)
        cofaces = [s for s in cpx.level(len(tau)) if members < set(s)]
        return Fraction(1, len(cofaces))

    def weight(s: Simplex) -> Fraction:
        if len(s) == 1:
            return Fraction(concentrations[s[0]])
        return sum(
            (frac(t, s) * weight(t) for t in combinations(s, len(s) - 1)),
            Fraction(0),
        )

    return {s: weight(s) for s in cpx.simplices()}


def oracle_shortest(
    view: AdjacencyView,
    assignment,
    source: Simplex,
    target: Simplex,
    alpha: float,
) -> float:
    """Minimum walk cost by exhaustive simple-path enumeration.

    Depth-first search over all simple paths, pruned only by the current
    best total (sound because step costs are strictly positive).  The
    direct edge, when present, seeds the bound.
    """
    n = view.n
    if n > MAX_ORACLE_LEVEL:
        raise InstanceTooLarge(f"level size {n} exceeds the oracle guard")
    i0 = view.index_of(source)
    j0 = view.index_of(target)
    if i0 == j0:
        return 0.0

    def cost(i: int, j: int) -> float:
        if alpha == 0:
            return 1.0
        base = Fraction(1) / (view.strengths[i][j] * assignment[view.order[j]])
        return float(base) if alpha == 1 else float(base) ** alpha

    best = math.inf
    if view.binary[i0][j0]:
        best = cost(i0, j0)

    def walk(u: int, acc: float, visited: frozenset[int]) -> None:
        nonlocal best
        for v in range(n):
            if not view.binary[u][v] or v in visited:
                continue
            total = acc + cost(u, v)
            if total >= best:
                continue
            if v == j0:
                best = total
            else:
                walk(v, total, visited | {v})

    walk(i0, 0.0, frozenset([i0]))
    return best
