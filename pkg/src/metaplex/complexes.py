"""Finite abstract simplicial complexes.

A simplex is a tuple of strictly increasing vertex ids.  A complex keeps
one set of simplices per dimension and maintains closure under taking
faces on every insertion.  Facets (the inclusion-maximal simplices) are
cached and recomputed lazily after mutation; once construction is done a
complex should be treated as immutable and is then safe to share across
threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import (
    DuplicateVertex,
    EmptyVertexList,
    SimplexNotInComplex,
    VertexOutOfRange,
    ZeroDimensionalSimplex,
)

Simplex = tuple[int, ...]


def make_simplex(vertices: Iterable[int]) -> Simplex:
    """Canonicalise a vertex collection into a sorted tuple.

    Duplicate ids are an error rather than silently collapsed: a repeat
    in the input almost always means an ingestion bug upstream.
    """
    vs = tuple(sorted(vertices))
    if not vs:
        raise EmptyVertexList("a simplex needs at least one vertex")
    for a, b in zip(vs, vs[1:]):
        if a == b:
            raise DuplicateVertex(f"vertex {a} appears more than once in {vs}")
    return vs


def simplex_dim(simplex: Simplex) -> int:
    """Dimension of a simplex: one less than its vertex count."""
    return len(simplex) - 1


def boundary(simplex: Simplex) -> tuple[Simplex, ...]:
    """All codimension-1 faces, in lexicographic order.

    The boundary of a vertex is signalled instead of returned empty:
    nothing here ever wants it, so asking for it indicates misuse.
    """
    if len(simplex) == 1:
        raise ZeroDimensionalSimplex(f"boundary of vertex {simplex} requested")
    return tuple(combinations(simplex, len(simplex) - 1))


class Graph:
    """Simple undirected graph on dense vertex ids ``0..vertex_count-1``."""

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]] = ()):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        self.vertex_count = vertex_count
        self._edges: set[tuple[int, int]] = set()
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise DuplicateVertex(f"loop at vertex {u} is not a simple edge")
        if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
            raise VertexOutOfRange(f"edge ({u}, {v}) exceeds vertex range 0..{self.vertex_count - 1}")
        self._edges.add((min(u, v), max(u, v)))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._edges))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edges

    def degree(self, v: int) -> int:
        return sum(1 for e in self._edges if v in e)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self._edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.vertex_count == other.vertex_count
            and self._edges == other._edges
        )

    def __repr__(self) -> str:
        return f"Graph(vertex_count={self.vertex_count}, edges={len(self._edges)})"


class SimplicialComplex:
    """Abstract simplicial complex with closure maintained on insertion."""

    def __init__(self, vertex_count: int):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        self.vertex_count = vertex_count
        self._levels: dict[int, set[Simplex]] = {}
        self._sorted: dict[int, tuple[Simplex, ...]] = {}
        self._facets: tuple[Simplex, ...] | None = None

    @classmethod
    def from_graph(cls, graph: Graph) -> "SimplicialComplex":
        """The 1-dimensional complex of a graph: all vertices plus its edges."""
        cpx = cls(graph.vertex_count)
        for v in range(graph.vertex_count):
            cpx.insert((v,))
        for edge in graph.edges:
            cpx.insert(edge)
        return cpx

    @classmethod
    def from_simplices(
        cls,
        vertex_count: int,
        simplices: Iterable[Iterable[int]],
        close: bool = True,
    ) -> "SimplicialComplex":
        """Build a complex from explicit simplices.

        With ``close=False`` the simplices are stored exactly as given,
        which can produce a family that is not face-closed; that mode
        exists so `validate_closure` has something real to audit.
        """
        cpx = cls(vertex_count)
        for s in simplices:
            if close:
                cpx.insert(s)
            else:
                cpx._add_raw(make_simplex(s))
        return cpx

    def _add_raw(self, simplex: Simplex) -> None:
        self._check_range(simplex)
        self._levels.setdefault(len(simplex) - 1, set()).add(simplex)
        self._invalidate()

    def _check_range(self, simplex: Simplex) -> None:
        if simplex[0] < 0 or simplex[-1] >= self.vertex_count:
            raise VertexOutOfRange(
                f"simplex {simplex} exceeds vertex range 0..{self.vertex_count - 1}"
            )

    def _invalidate(self) -> None:
        self._sorted.clear()
        self._facets = None

    def insert(self, vertices: Iterable[int]) -> "SimplicialComplex":
        """Insert a simplex together with every non-empty subset (closure).

        Idempotent: re-inserting an existing simplex changes nothing.
        """
        simplex = make_simplex(vertices)
        self._check_range(simplex)
        for k in range(1, len(simplex) + 1):
            level = self._levels.setdefault(k - 1, set())
            level.update(combinations(simplex, k))
        self._invalidate()
        return self

    def __contains__(self, simplex) -> bool:
        simplex = tuple(simplex)
        level = self._levels.get(len(simplex) - 1)
        return level is not None and simplex in level

    @property
    def dim(self) -> int:
        """Largest simplex dimension present; -1 for the empty complex."""
        dims = [q for q, level in self._levels.items() if level]
        return max(dims) if dims else -1

    def level(self, q: int) -> tuple[Simplex, ...]:
        """All q-simplices in lexicographic order."""
        if q not in self._sorted:
            self._sorted[q] = tuple(sorted(self._levels.get(q, ())))
        return self._sorted[q]

    def level_size(self, q: int) -> int:
        return len(self._levels.get(q, ()))

    def simplices(self) -> Iterator[Simplex]:
        """Every simplex, by ascending dimension then lexicographically."""
        for q in range(self.dim + 1):
            yield from self.level(q)

    def simplex_count(self) -> int:
        return sum(len(level) for level in self._levels.values())

    def facets(self) -> tuple[Simplex, ...]:
        """Inclusion-maximal simplices, lexicographically ordered.

        In a face-closed complex a simplex is maximal exactly when it has
        no coface one dimension up, so marking the codimension-1 faces of
        everything identifies all non-maximal simplices.
        """
        if self._facets is None:
            covered: set[Simplex] = set()
            for q in range(1, self.dim + 1):
                for sigma in self._levels.get(q, ()):
                    covered.update(combinations(sigma, q))
            out = [s for level in self._levels.values() for s in level if s not in covered]
            self._facets = tuple(sorted(out))
        return self._facets

    def upper_degree(self, simplex: Simplex) -> int:
        """Number of (q+1)-simplices containing the given q-simplex."""
        simplex = tuple(simplex)
        if simplex not in self:
            raise SimplexNotInComplex(f"{simplex} is not in the complex")
        q = len(simplex) - 1
        members = set(simplex)
        return sum(1 for tau in self.level(q + 1) if members.issubset(tau))

    def skeleton(self, d: int) -> "SimplicialComplex":
        """Sub-complex of all simplices of dimension at most ``d``."""
        if d < 0:
            raise ValueError("skeleton dimension must be non-negative")
        out = SimplicialComplex(self.vertex_count)
        for q in range(min(d, self.dim) + 1):
            out._levels[q] = set(self._levels.get(q, ()))
        out._invalidate()
        return out

    def one_skeleton_graph(self) -> Graph:
        """The 1-skeleton viewed as a plain graph."""
        return Graph(self.vertex_count, self.level(1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        mine = {q: level for q, level in self._levels.items() if level}
        theirs = {q: level for q, level in other._levels.items() if level}
        return self.vertex_count == other.vertex_count and mine == theirs

    def __repr__(self) -> str:
        sizes = ", ".join(f"n_{q}={self.level_size(q)}" for q in range(self.dim + 1))
        return f"SimplicialComplex(vertex_count={self.vertex_count}, {sizes or 'empty'})"


@dataclass(frozen=True)
class ClosureViolation:
    simplex: Simplex
    missing_face: Simplex


@dataclass(frozen=True)
class ClosureReport:
    violations: tuple[ClosureViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_closure(cpx: SimplicialComplex) -> ClosureReport:
    """Audit face-closure.  Violations are data for the caller, not errors.

    Checking codimension-1 faces is enough: any deeper missing subset
    shows up as a codimension-1 violation of some intermediate face.
    """
    bad: list[ClosureViolation] = []
    for q in range(1, cpx.dim + 1):
        for sigma in cpx.level(q):
            for face in combinations(sigma, q):
                if face not in cpx:
                    bad.append(ClosureViolation(sigma, face))
    return ClosureReport(tuple(bad))


def clique_complex(graph: Graph, max_dim: int) -> SimplicialComplex:
    """Flag complex of a graph, truncated at dimension ``max_dim``.

    Every vertex subset inducing a complete subgraph becomes a simplex,
    capped at ``max_dim`` (the cap is mandatory; dense graphs blow up
    exponentially without it).  Maximal cliques come from Bron-Kerbosch
    with pivoting; oversized cliques are inserted via their
    (max_dim+1)-subsets, and closure fills in the rest.
    """
    if max_dim < 1:
        raise ValueError("max_dim must be at least 1")
    cpx = SimplicialComplex(graph.vertex_count)
    for v in range(graph.vertex_count):
        cpx.insert((v,))
    adj = graph.adjacency()
    for clique in _maximal_cliques(adj):
        members = tuple(sorted(clique))
        if len(members) <= max_dim + 1:
            cpx.insert(members)
        else:
            for sub in combinations(members, max_dim + 1):
                cpx.insert(sub)
    return cpx


def _maximal_cliques(adj: list[set[int]]) -> Iterator[set[int]]:
    """Bron-Kerbosch with a max-candidate pivot.  Yield order is not part
    of the contract; callers treat the result as a set."""

    def expand(r: set[int], p: set[int], x: set[int]) -> Iterator[set[int]]:
        if not p and not x:
            yield r
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            yield from expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    if adj:
        yield from expand(set(), set(range(len(adj))), set())
