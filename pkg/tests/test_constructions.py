import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from matro import bits
from matro.bits import from_indices as S
from matro.canonical import is_isomorphic
from matro.constructions import (
    circuit_hyperplanes,
    contract,
    counterexample_sec4,
    delete,
    direct_sum,
    dual,
    figure2_example,
    free_extension,
    is_circuit_hyperplane,
    iterated_truncation,
    loops_and_coloops,
    minor,
    parallel_connection,
    relax,
    restrict,
    truncation,
    truncation_via_free_extension,
    two_sum,
    uniform,
)
from matro.core import bases_avoiding, is_valid
from matro.errors import NotCircuitHyperplane, RankZero
from matro.order import circuits_through, is_cosimple

from helpers import brute_rank, matroids


class TestBasicBuilders:
    def test_uniform(self):
        assert uniform(1, 2).bases == (S([0]), S([1]))
        assert uniform(0, 3).bases == (0,) and uniform(0, 3).loops == 0b111
        assert len(uniform(2, 4).bases) == 6

    def test_loops_and_coloops(self):
        M = loops_and_coloops(1, 1)
        assert (M.n, M.r, M.bases) == (2, 1, (S([0]),))
        assert loops_and_coloops(3, 2).bases == (0b111,)

    def test_direct_sum(self):
        assert len(direct_sum(uniform(1, 2), uniform(1, 2)).bases) == 4
        assert direct_sum(uniform(1, 1), uniform(0, 1)) == loops_and_coloops(1, 1)

    @given(matroids(n_max=3), matroids(n_max=3))
    @settings(max_examples=40, deadline=None)
    def test_direct_sum_rank_adds(self, M, N):
        D = direct_sum(M, N)
        assert is_valid(D)
        for A in range(1 << D.n):
            low, high = A & M.ground, A >> M.n
            assert D.rank_of(A) == M.rank_of(low) + N.rank_of(high)


class TestMinors:
    def test_uniform_minors(self):
        assert delete(uniform(2, 4), S([3])) == uniform(2, 3)
        assert contract(uniform(2, 4), S([3])) == uniform(1, 3)

    def test_contract_free_point_of_figure2(self):
        ex = figure2_example()
        N = contract(ex.matroid, S([ex.element("x6")]))
        assert (N.n, N.r) == (6, 2)
        assert is_valid(N)

    def test_minor_index_map(self):
        N, keep = minor(uniform(2, 5), delete=S([1]), contract=S([3]))
        assert keep == (0, 2, 4)
        assert N == uniform(1, 3)

    @given(matroids(n_max=6, min_n=1), st.data())
    @settings(max_examples=80, deadline=None)
    def test_minor_rank_functions(self, M, data):
        X = data.draw(st.integers(0, M.ground))
        D, keep_d = minor(M, delete=X)
        C, keep_c = minor(M, contract=X)
        for A in range(1 << D.n):
            old = sum(1 << keep_d[i] for i in bits.to_indices(A))
            assert D.rank_of(A) == brute_rank(M, old)
            old = sum(1 << keep_c[i] for i in bits.to_indices(A))
            assert C.rank_of(A) == brute_rank(M, old | X) - brute_rank(M, X)

    @given(matroids(n_max=6, min_n=1), st.data())
    @settings(max_examples=80, deadline=None)
    def test_duality_swaps_deletion_and_contraction(self, M, data):
        X = data.draw(st.integers(0, M.ground))
        assert dual(delete(M, X)) == contract(dual(M), X)
        assert dual(contract(M, X)) == delete(dual(M), X)

    @given(matroids(n_max=6, min_n=2), st.data())
    @settings(max_examples=80, deadline=None)
    def test_disjoint_minors_commute(self, M, data):
        X = data.draw(st.integers(0, M.ground))
        Y = data.draw(st.integers(0, M.ground)) & ~X
        one, keep = minor(M, delete=X, contract=Y)
        tmp, k1 = minor(M, contract=Y)
        Xs = sum(1 << i for i, old in enumerate(k1) if X >> old & 1)
        assert delete(tmp, Xs) == one

    def test_restrict(self):
        assert restrict(uniform(2, 4), S([0, 1, 2])) == uniform(2, 3)


class TestDualTruncation:
    def test_self_dual(self):
        assert dual(uniform(1, 2)) == uniform(1, 2)
        assert dual(uniform(2, 4)) == uniform(2, 4)

    def test_dual_swaps_loops_and_coloops(self):
        assert is_isomorphic(dual(loops_and_coloops(2, 3)), loops_and_coloops(3, 2))

    @given(matroids(n_max=6))
    @settings(max_examples=60, deadline=None)
    def test_dual_involution(self, M):
        assert dual(dual(M)) == M

    def test_truncation(self):
        assert truncation(uniform(2, 3)) == uniform(1, 3)
        assert truncation(uniform(3, 3)) == uniform(2, 3)
        with pytest.raises(RankZero):
            truncation(uniform(0, 2))

    def test_truncation_of_figure2(self):
        M = figure2_example().matroid
        T = truncation(M)
        assert T.r == 2
        assert T == truncation_via_free_extension(M)
        assert sorted(T.hyperplanes) == sorted(M.flats_of_rank(1))

    @given(matroids(n_max=6))
    @settings(max_examples=60, deadline=None)
    def test_truncation_routes_agree(self, M):
        assume(M.r > 0)
        assert truncation(M) == truncation_via_free_extension(M)
        assert iterated_truncation(M, M.r) == uniform(0, M.n)

    def test_free_extension(self):
        assert free_extension(uniform(1, 1)) == uniform(1, 2)
        assert free_extension(uniform(2, 3)) == uniform(2, 4)

    @given(matroids(n_max=5))
    @settings(max_examples=60, deadline=None)
    def test_free_extension_is_free(self, M):
        E = free_extension(M)
        assert is_valid(E) and E.is_free_element(M.n)
        assert delete(E, 1 << M.n) == M


class TestRelaxation:
    def test_relax_to_uniform(self):
        M = bases_avoiding(4, 2, [[0, 1]])
        assert is_circuit_hyperplane(M, S([0, 1]))
        assert relax(M, S([0, 1])) == uniform(2, 4)

    def test_uniform_has_no_circuit_hyperplane(self):
        assert circuit_hyperplanes(uniform(2, 4)) == []
        with pytest.raises(NotCircuitHyperplane):
            relax(uniform(2, 4), S([0, 1]))

    @given(matroids(n_max=6))
    @settings(max_examples=80, deadline=None)
    def test_relaxations_are_matroids(self, M):
        for X in circuit_hyperplanes(M):
            assert is_valid(relax(M, X))


class TestGluing:
    def test_parallel_connection_of_lines(self):
        P, _ = parallel_connection(uniform(1, 2), uniform(1, 2), 0, 0)
        assert P == uniform(1, 3)

    def test_two_sum(self):
        S2, _ = two_sum(uniform(2, 4), uniform(2, 4), 0, 0)
        assert (S2.n, S2.r) == (6, 3)
        assert is_valid(S2)


class TestNamedExamples:
    def test_figure2(self):
        ex = figure2_example()
        M = ex.matroid
        assert (M.n, M.r) == (7, 3) and is_valid(M)
        assert M.closure(S([ex.element("x3")])) == S([ex.element("x3"), ex.element("x3'")])

    def test_counterexample(self):
        ex = counterexample_sec4()
        M = ex.matroid
        assert (M.n, M.r) == (11, 5) and is_valid(M)
        assert is_cosimple(M)
        assert circuits_through(M, ex.element("f")) > 0
