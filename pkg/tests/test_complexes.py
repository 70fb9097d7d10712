"""Complex construction, closure, facets, skeletons, clique complexes."""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metaplex import (
    Graph,
    SimplicialComplex,
    boundary,
    clique_complex,
    make_simplex,
    simplex_dim,
    validate_closure,
)
from metaplex.errors import (
    DuplicateVertex,
    EmptyVertexList,
    SimplexNotInComplex,
    VertexOutOfRange,
    ZeroDimensionalSimplex,
)


def closure_of_triangle() -> SimplicialComplex:
    return SimplicialComplex(3).insert((0, 1, 2))


class TestMakeSimplex:
    def test_sorts_input(self):
        assert make_simplex([2, 0, 1]) == (0, 1, 2)
        assert simplex_dim((0, 1, 2)) == 2

    def test_singleton(self):
        assert make_simplex([7]) == (7,)
        assert simplex_dim((7,)) == 0

    def test_duplicate_rejected(self):
        with pytest.raises(DuplicateVertex):
            make_simplex([1, 1, 2])

    def test_empty_rejected(self):
        with pytest.raises(EmptyVertexList):
            make_simplex([])

    @given(st.lists(st.integers(0, 50), min_size=1, max_size=6, unique=True))
    def test_canonical_form(self, ids):
        s = make_simplex(ids)
        assert list(s) == sorted(ids)
        assert make_simplex(reversed(ids)) == s


class TestBoundary:
    def test_triangle(self):
        assert set(boundary((0, 1, 2))) == {(0, 1), (0, 2), (1, 2)}

    def test_edge(self):
        assert set(boundary((0, 1))) == {(0,), (1,)}

    def test_vertex_signals(self):
        with pytest.raises(ZeroDimensionalSimplex):
            boundary((3,))

    def test_count_and_order(self):
        faces = boundary((0, 2, 5, 9))
        assert len(faces) == 4
        assert list(faces) == sorted(faces)


class TestInsertWithClosure:
    def test_closure_of_triangle(self):
        cpx = closure_of_triangle()
        assert cpx.level_size(0) == 3
        assert cpx.level_size(1) == 3
        assert cpx.level_size(2) == 1

    def test_idempotent(self):
        cpx = closure_of_triangle()
        again = closure_of_triangle().insert((0, 1, 2))
        assert cpx == again

    def test_faces_already_present(self):
        cpx = SimplicialComplex(2).insert((0,)).insert((1,))
        cpx.insert((0, 1))
        assert cpx.level(1) == ((0, 1),)
        assert cpx.level_size(0) == 2

    def test_out_of_range(self):
        with pytest.raises(VertexOutOfRange):
            SimplicialComplex(2).insert((0, 5))

    @given(
        st.lists(
            st.sets(st.integers(0, 7), min_size=1, max_size=4),
            min_size=1,
            max_size=8,
        )
    )
    @settings(max_examples=60)
    def test_always_closed(self, simplex_sets):
        cpx = SimplicialComplex(8)
        for s in simplex_sets:
            cpx.insert(tuple(s))
        assert validate_closure(cpx).ok
        # facet cover: everything sits inside some facet
        facets = [set(f) for f in cpx.facets()]
        for s in cpx.simplices():
            assert any(set(s) <= f for f in facets)
        # facets are pairwise incomparable
        for a, b in combinations(facets, 2):
            assert not (a <= b or b <= a)


class TestFacets:
    def test_single_triangle(self):
        assert closure_of_triangle().facets() == ((0, 1, 2),)

    def test_isolated_vertex_is_facet(self):
        cpx = SimplicialComplex(3).insert((0, 1)).insert((2,))
        assert cpx.facets() == ((0, 1), (2,))

    def test_k4_admitted_complex(self, k4_result):
        # maximality over the admitted simplex set, checked by hand
        assert k4_result.complex.facets() == ((0, 1, 3), (0, 2, 3), (1, 2, 3))


class TestUpperDegree:
    def test_edge_in_admitted_k4(self, k4_result):
        assert k4_result.complex.upper_degree((0, 3)) == 2

    def test_facet_has_zero(self, k4_result):
        for facet in k4_result.complex.facets():
            assert k4_result.complex.upper_degree(facet) == 0

    def test_vertex_in_triangle(self):
        assert closure_of_triangle().upper_degree((0,)) == 2

    def test_missing_simplex(self):
        with pytest.raises(SimplexNotInComplex):
            closure_of_triangle().upper_degree((0, 3))

    def test_zero_iff_facet(self, k4_result):
        cpx = k4_result.complex
        facets = set(cpx.facets())
        for s in cpx.simplices():
            assert (cpx.upper_degree(s) == 0) == (s in facets)


class TestSkeleton:
    def test_one_skeleton_of_triangle(self):
        sk = closure_of_triangle().skeleton(1)
        assert sk.level_size(0) == 3
        assert sk.level_size(1) == 3
        assert sk.level_size(2) == 0
        assert validate_closure(sk).ok

    def test_full_skeleton_is_identity(self, k4_result):
        cpx = k4_result.complex
        assert cpx.skeleton(cpx.dim) == cpx

    def test_zero_skeleton(self, k4_result):
        sk = k4_result.complex.skeleton(0)
        assert sk.dim == 0
        assert sk.level_size(0) == 4


class TestValidateClosure:
    def test_closed_complex(self):
        assert validate_closure(closure_of_triangle()).ok

    def test_missing_edges_reported(self):
        cpx = SimplicialComplex.from_simplices(
            3, [(0, 1, 2), (0,), (1,), (2,)], close=False
        )
        report = validate_closure(cpx)
        assert len(report.violations) == 3
        assert {v.missing_face for v in report.violations} == {(0, 1), (0, 2), (1, 2)}

    def test_empty_complex(self):
        assert validate_closure(SimplicialComplex(0)).ok


class TestCliqueComplex:
    def test_k3(self):
        cpx = clique_complex(Graph(3, [(0, 1), (0, 2), (1, 2)]), 2)
        assert cpx == closure_of_triangle()

    def test_path_has_no_triangle(self):
        cpx = clique_complex(Graph(3, [(0, 1), (1, 2)]), 2)
        assert cpx.level_size(1) == 2
        assert cpx.level_size(2) == 0

    def test_k4_capped_at_dim_2(self):
        g = Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
        cpx = clique_complex(g, 2)
        assert cpx.level_size(0) == 4
        assert cpx.level_size(1) == 6
        assert cpx.level_size(2) == 4
        assert cpx.level_size(3) == 0

    def test_isolated_vertices_kept(self):
        cpx = clique_complex(Graph(3, [(0, 1)]), 2)
        assert (2,) in cpx

    @pytest.mark.parametrize("seed", range(12))
    def test_brute_force_on_small_graphs(self, seed):
        # every vertex subset inducing a complete subgraph, and nothing else
        import random

        rng = random.Random(seed)
        n = rng.randint(2, 8)
        g = Graph(n)
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.5:
                    g.add_edge(i, j)
        max_dim = 3
        cpx = clique_complex(g, max_dim)
        expected = set()
        for size in range(1, max_dim + 2):
            for subset in combinations(range(n), size):
                if all(g.has_edge(u, v) for u, v in combinations(subset, 2)):
                    expected.add(subset)
        assert set(cpx.simplices()) == expected


class TestGraph:
    def test_loop_rejected(self):
        with pytest.raises(DuplicateVertex):
            Graph(2, [(1, 1)])

    def test_edges_canonical(self):
        g = Graph(3, [(2, 0), (0, 2), (1, 0)])
        assert g.edges == ((0, 1), (0, 2))

    def test_out_of_range(self):
        with pytest.raises(VertexOutOfRange):
            Graph(2, [(0, 2)])
