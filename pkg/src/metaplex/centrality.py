"""Facet-mediated adjacency and the centrality family built on it.

Two q-simplices are adjacent when some facet properly contains both; the
strength of the tie is the largest weight among such facets.  Walks pay
for each step in inverse proportion to (strength times destination
weight), raised to an interpolation exponent alpha, so the induced
distances are asymmetric even though adjacency itself is symmetric.

Adjacency strengths and degrees stay exact rationals; distances and the
alpha-interpolated quantities live in 64-bit floating point, because
alpha is an arbitrary real exponent.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .complexes import Simplex, SimplicialComplex, simplex_dim
from .errors import DimensionMismatch, EmptyLevel, NotAdjacent, SimplexNotInComplex

UNREACHABLE = math.inf


@dataclass(frozen=True)
class AdjacencyView:
    """Binary and strength matrices over one level's canonical order.

    ``mediators`` records, for each adjacent pair (i < j), the
    lexicographically smallest facet achieving the maximal strength;
    distances never need it, but walk reconstruction does.
    """

    q: int
    order: tuple[Simplex, ...]
    binary: tuple[tuple[int, ...], ...]
    strengths: tuple[tuple[Fraction, ...], ...]
    mediators: Mapping[tuple[int, int], Simplex]

    def __post_init__(self):
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.order)})

    @property
    def n(self) -> int:
        return len(self.order)

    def index_of(self, simplex: Simplex) -> int:
        try:
            return self._index[tuple(simplex)]
        except KeyError:
            raise SimplexNotInComplex(
                f"{tuple(simplex)} is not a level-{self.q} simplex"
            ) from None

    def mediator(self, i: int, j: int) -> Simplex | None:
        return self.mediators.get((min(i, j), max(i, j)))


def facet_adjacent(cpx: SimplicialComplex, si: Simplex, sj: Simplex) -> bool:
    """Whether some facet properly contains both simplices.

    A simplex is never adjacent to itself, and a facet is never adjacent
    to anything at its own level (no facet properly contains it).
    """
    si, sj = tuple(si), tuple(sj)
    if simplex_dim(si) != simplex_dim(sj):
        raise DimensionMismatch(f"{si} and {sj} have different dimensions")
    if si not in cpx or sj not in cpx:
        raise SimplexNotInComplex(f"{si if si not in cpx else sj} is not in the complex")
    if si == sj:
        return False
    union = set(si) | set(sj)
    return any(union.issubset(gamma) for gamma in cpx.facets())


def strength(cpx: SimplicialComplex, assignment, si: Simplex, sj: Simplex) -> Fraction:
    """Largest facet weight among facets containing both simplices;
    zero when the pair is not adjacent or identical."""
    si, sj = tuple(si), tuple(sj)
    if simplex_dim(si) != simplex_dim(sj):
        raise DimensionMismatch(f"{si} and {sj} have different dimensions")
    if si not in cpx or sj not in cpx:
        raise SimplexNotInComplex(f"{si if si not in cpx else sj} is not in the complex")
    if si == sj:
        return Fraction(0)
    union = set(si) | set(sj)
    best = Fraction(0)
    for gamma in cpx.facets():
        if union.issubset(gamma):
            best = max(best, assignment[gamma])
    return best


def adjacency_matrices(cpx: SimplicialComplex, assignment, q: int) -> AdjacencyView:
    """Build the level-q adjacency view in one sweep over the facets.

    Facets of dimension q or below cannot properly contain a q-simplex
    and are skipped.  Facets are visited in lexicographic order, so the
    first facet attaining a pair's maximal strength is automatically the
    lexicographically smallest mediator.
    """
    if q < 0:
        raise ValueError("level must be non-negative")
    order = cpx.level(q)
    if not order:
        raise EmptyLevel(f"no simplices at dimension {q}")
    index = {s: i for i, s in enumerate(order)}
    n = len(order)
    binary = [[0] * n for _ in range(n)]
    strengths = [[Fraction(0)] * n for _ in range(n)]
    mediators: dict[tuple[int, int], Simplex] = {}
    for gamma in cpx.facets():
        if len(gamma) <= q + 1:
            continue
        w = assignment[gamma]
        members = sorted(index[s] for s in combinations(gamma, q + 1))
        for a, b in combinations(members, 2):
            binary[a][b] = binary[b][a] = 1
            if w > strengths[a][b]:
                strengths[a][b] = strengths[b][a] = w
                mediators[(a, b)] = gamma
    return AdjacencyView(
        q=q,
        order=order,
        binary=tuple(tuple(row) for row in binary),
        strengths=tuple(tuple(row) for row in strengths),
        mediators=mediators,
    )


def simplicial_degree(view: AdjacencyView, simplex: Simplex) -> int:
    """Row sum of the binary adjacency matrix: how many level-mates share
    a facet with this simplex."""
    return sum(view.binary[view.index_of(simplex)])


def weighted_degree(view: AdjacencyView, assignment, simplex: Simplex) -> Fraction:
    """Adjacency strength coupled with neighbour weights, summed."""
    i = view.index_of(simplex)
    total = Fraction(0)
    for j, s in enumerate(view.strengths[i]):
        if s:
            total += assignment[view.order[j]] * s
    return total


def combined_degree(view: AdjacencyView, assignment, simplex: Simplex, alpha: float):
    """Geometric interpolation k^(1-alpha) * D^alpha.

    The endpoints are special-cased so that alpha=0 returns the integer
    degree and alpha=1 the exact rational weighted degree; isolated
    simplices (k = 0, hence D = 0) score 0 for every alpha.
    """
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1] for the combined degree")
    k = simplicial_degree(view, simplex)
    if k == 0:
        return 0
    if alpha == 0:
        return k
    d = weighted_degree(view, assignment, simplex)
    if alpha == 1:
        return d
    return float(k) ** (1.0 - alpha) * float(d) ** alpha


def step_cost(view: AdjacencyView, assignment, i: int, j: int, alpha: float) -> float:
    """Cost of one walk step from position i to adjacent position j.

    The base cost is 1/(strength * destination weight); alpha = 0 turns
    every step into a unit hop, alpha = 1 uses the base cost exactly.
    """
    if not view.binary[i][j]:
        raise NotAdjacent(f"{view.order[i]} and {view.order[j]} share no facet")
    if alpha == 0:
        return 1.0
    base = Fraction(1) / (view.strengths[i][j] * assignment[view.order[j]])
    if alpha == 1:
        return float(base)
    return float(base) ** alpha


@dataclass(frozen=True)
class DistanceTable:
    """All-pairs walk distances at a fixed alpha; inf marks unreachable."""

    alpha: float
    order: tuple[Simplex, ...]
    dist: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.order)})

    @property
    def n(self) -> int:
        return len(self.order)

    def index_of(self, simplex: Simplex) -> int:
        try:
            return self._index[tuple(simplex)]
        except KeyError:
            raise SimplexNotInComplex(f"{tuple(simplex)} is not in the distance table") from None

    def distance(self, si: Simplex, sj: Simplex) -> float:
        return self.dist[self.index_of(si)][self.index_of(sj)]


def shortest_distances(view: AdjacencyView, assignment, alpha: float) -> DistanceTable:
    """Dijkstra from every source over the directed step-cost graph.

    Costs are strictly positive, so optimal walks are simple paths and
    plain non-negative relaxation is exact.  Each source is independent;
    asymmetric costs rule out any all-pairs shortcut.
    """
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    n = view.n
    succ: list[list[tuple[int, float]]] = []
    for i in range(n):
        succ.append(
            [(j, step_cost(view, assignment, i, j, alpha)) for j in range(n) if view.binary[i][j]]
        )
    rows = []
    for src in range(n):
        dist = [UNREACHABLE] * n
        dist[src] = 0.0
        done = [False] * n
        heap: list[tuple[float, int]] = [(0.0, src)]
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for v, c in succ[u]:
                nd = d + c
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        rows.append(tuple(dist))
    return DistanceTable(alpha=float(alpha), order=view.order, dist=tuple(rows))


def connected_components(view: AdjacencyView) -> tuple[tuple[int, ...], ...]:
    """Components of the undirected adjacency relation, each sorted, in
    order of their smallest member."""
    n = view.n
    seen = [False] * n
    components: list[tuple[int, ...]] = []
    for start in range(n):
        if seen[start]:
            continue
        queue = [start]
        seen[start] = True
        members = []
        while queue:
            u = queue.pop()
            members.append(u)
            for v in range(n):
                if view.binary[u][v] and not seen[v]:
                    seen[v] = True
                    queue.append(v)
        components.append(tuple(sorted(members)))
    return tuple(components)


def component_of(components: tuple[tuple[int, ...], ...], i: int) -> int:
    for cid, members in enumerate(components):
        if i in members:
            return cid
    raise IndexError(f"index {i} is in no component")


def farness(
    table: DistanceTable,
    components: tuple[tuple[int, ...], ...],
    simplex: Simplex,
    incoming: bool = False,
) -> float:
    """Sum of distances to (or from, with ``incoming``) the rest of the
    simplex's component."""
    i = table.index_of(simplex)
    members = components[component_of(components, i)]
    if incoming:
        return sum(table.dist[j][i] for j in members if j != i)
    return sum(table.dist[i][j] for j in members if j != i)


def closeness(
    table: DistanceTable,
    components: tuple[tuple[int, ...], ...],
    simplex: Simplex,
    incoming: bool = False,
) -> float:
    """Reciprocal farness within the component; singleton components get
    0 by convention, matching the harmonic empty sum."""
    i = table.index_of(simplex)
    members = components[component_of(components, i)]
    if len(members) == 1:
        return 0.0
    return 1.0 / farness(table, components, simplex, incoming=incoming)


def harmonic(table: DistanceTable, simplex: Simplex, incoming: bool = False) -> float:
    """Sum of reciprocal distances; unreachable pairs contribute 0."""
    i = table.index_of(simplex)
    total = 0.0
    for j in range(table.n):
        if j == i:
            continue
        d = table.dist[j][i] if incoming else table.dist[i][j]
        if d != UNREACHABLE:
            total += 1.0 / d
    return total


@dataclass(frozen=True)
class CentralityRow:
    simplex: Simplex
    degree: int
    weighted_degree: Fraction
    combined_degree: object
    closeness: float
    harmonic: float
    component: int
    farness: float


@dataclass(frozen=True)
class CentralityReport:
    """Per-simplex centrality values at one level and one alpha.

    Rows are kept in canonical simplex order; every column is a totally
    ordered real, so the report can be re-sorted by any of them with
    label order breaking ties deterministically.
    """

    q: int
    alpha: float
    incoming: bool
    rows: tuple[CentralityRow, ...]

    def sorted_by(self, column: str, reverse: bool = True) -> tuple[CentralityRow, ...]:
        by_label = sorted(self.rows, key=lambda r: r.simplex)
        return tuple(sorted(by_label, key=lambda r: getattr(r, column), reverse=reverse))


def build_report(
    cpx: SimplicialComplex,
    assignment,
    q: int,
    alpha: float,
    incoming: bool = False,
) -> CentralityReport:
    """Assemble the full centrality report for one level."""
    view = adjacency_matrices(cpx, assignment, q)
    table = shortest_distances(view, assignment, alpha)
    components = connected_components(view)
    rows = []
    for i, simplex in enumerate(view.order):
        rows.append(
            CentralityRow(
                simplex=simplex,
                degree=simplicial_degree(view, simplex),
                weighted_degree=weighted_degree(view, assignment, simplex),
                combined_degree=combined_degree(view, assignment, simplex, alpha),
                closeness=closeness(table, components, simplex, incoming=incoming),
                harmonic=harmonic(table, simplex, incoming=incoming),
                component=component_of(components, i),
                farness=farness(table, components, simplex, incoming=incoming),
            )
        )
    return CentralityReport(q=q, alpha=float(alpha), incoming=incoming, rows=tuple(rows))
