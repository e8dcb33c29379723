from hypothesis import given, settings

import pytest

from matro import bits
from matro.bits import from_indices as S
from matro.constructions import direct_sum, dual, figure2_example, uniform
from matro.core import Matroid, bases_avoiding, from_sets, is_valid, validate
from matro.errors import BoundsViolated, EmptyFamily, ExchangeViolated, WrongCardinality

from helpers import brute_circuits, brute_flats, brute_rank, matroids


@pytest.fixture(scope="module")
def fig2():
    return figure2_example()


class TestBits:
    def test_round_trip(self):
        assert bits.to_indices(S([0, 3, 5])) == (0, 3, 5)
        assert bits.popcount(S([1, 2, 9])) == 3

    def test_k_subsets_lex(self):
        assert [bits.to_indices(A) for A in bits.k_subsets(4, 2)] == [
            (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)
        ]

    def test_submasks_counts(self):
        assert len(list(bits.submasks(0b1011))) == 8

    def test_compress_and_permute(self):
        assert bits.compress(S([1, 3]), (1, 2, 3)) == S([0, 2])
        assert bits.permute(S([0, 2]), [2, 0, 1]) == S([2, 1])


class TestValidate:
    def test_uniform_line(self):
        M = validate(2, 1, [S([0]), S([1])])
        assert M.bases == (S([0]), S([1]))

    def test_parallel_pair_family_is_valid(self):
        M = validate(3, 2, [S([0, 1]), S([1, 2])])
        assert M.r == 2 and len(M.bases) == 2

    def test_exchange_violation(self):
        with pytest.raises(ExchangeViolated):
            validate(4, 2, [S([0, 1]), S([2, 3])])

    def test_wrong_cardinality(self):
        with pytest.raises(WrongCardinality):
            validate(3, 2, [S([0, 1]), S([2])])

    def test_empty_family(self):
        with pytest.raises(EmptyFamily):
            validate(3, 1, [])

    def test_bounds(self):
        with pytest.raises(BoundsViolated):
            validate(17, 0, [0])
        with pytest.raises(BoundsViolated):
            validate(3, 4, [0b111])
        with pytest.raises(BoundsViolated):
            validate(2, 1, [S([2])])

    def test_is_valid(self):
        assert is_valid(uniform(2, 4))
        assert not is_valid(Matroid(4, 2, [S([0, 1]), S([2, 3])]))


class TestRankClosure:
    def test_uniform_ranks(self):
        U = uniform(2, 3)
        assert U.rank_of(0) == 0
        assert U.rank_of(0b111) == 2

    def test_figure2_rank(self, fig2):
        M = fig2.matroid
        A = S(fig2.element(x) for x in ("x1", "x2", "x3"))
        assert M.rank_of(A) == 2 == brute_rank(M, A)

    def test_closures(self, fig2):
        M, e = fig2.matroid, fig2.element
        assert uniform(2, 3).closure(S([0])) == S([0])
        assert M.closure(S([e("x3")])) == S([e("x3"), e("x3'")])
        assert M.closure(S([e("x1"), e("x2")])) == S([e(x) for x in ("x1", "x2", "x3", "x3'")])

    @given(matroids())
    @settings(max_examples=60, deadline=None)
    def test_rank_matches_brute_force(self, M):
        for A in range(1 << M.n):
            assert M.rank_of(A) == brute_rank(M, A)

    @given(matroids())
    @settings(max_examples=60, deadline=None)
    def test_closure_axioms(self, M):
        for A in range(1 << M.n):
            c = M.closure(A)
            assert A & ~c == 0
            assert M.closure(c) == c
            assert M.rank_of(c) == M.rank_of(A)
            for e in range(M.n):
                grown = M.closure(A | 1 << e)
                assert c & ~grown == 0  # monotone
                for f in bits.to_indices(grown & ~c):
                    assert M.closure(A | 1 << f) >> e & 1  # exchange

    @given(matroids())
    @settings(max_examples=60, deadline=None)
    def test_rank_submodular(self, M):
        rk = M.rank_of
        for A in range(1 << M.n):
            for e in range(M.n):
                B = A | 1 << e
                assert rk(A) <= rk(B) <= rk(A) + 1


class TestDerivedFamilies:
    def test_circuits_small(self, fig2):
        assert uniform(2, 2).circuits == ()
        assert list(uniform(1, 2).circuits) == [0b11]
        e = fig2.element
        C = set(fig2.matroid.circuits)
        assert {S([e("x3"), e("x3'")]), S([e("x1"), e("x2"), e("x3")]), S([e("x3"), e("x4"), e("x5")])} <= C

    def test_flats(self, fig2):
        assert uniform(2, 3).flats_of_rank(1) == [S([0]), S([1]), S([2])]
        rank2 = fig2.matroid.flats_of_rank(2)
        assert len(rank2) == 11
        assert sum(1 for F in rank2 if F >> fig2.element("x1") & 1) == 4
        assert sum(1 for F in rank2 if F >> fig2.element("x3") & 1) == 3
        assert uniform(0, 3).flats_of_rank(0) == [0b111]

    def test_cyclic_flats(self, fig2):
        e = fig2.element
        want = {0, S([e("x3"), e("x3'")]), S([e(x) for x in ("x1", "x2", "x3", "x3'")]),
                S([e(x) for x in ("x3", "x3'", "x4", "x5")]), fig2.matroid.ground}
        assert set(fig2.matroid.cyclic_flats) == want
        assert list(uniform(2, 2).cyclic_flats) == [0]
        assert set(uniform(1, 2).cyclic_flats) == {0, 0b11}

    def test_loops_coloops(self):
        assert uniform(0, 3).loops == 0b111 and uniform(0, 3).coloops == 0
        assert uniform(3, 3).loops == 0 and uniform(3, 3).coloops == 0b111
        assert direct_sum(uniform(1, 2), uniform(1, 1)).coloops == S([2])

    def test_free_elements(self, fig2):
        M = fig2.matroid
        assert M.is_free_element(fig2.element("x6"))
        assert not M.is_free_element(fig2.element("x3"))
        assert all(uniform(3, 3).is_free_element(e) for e in range(3))

    @given(matroids())
    @settings(max_examples=60, deadline=None)
    def test_circuits_and_flats_match_brute_force(self, M):
        assert sorted(M.circuits) == brute_circuits(M)
        assert sorted(M.flats) == brute_flats(M)

    @given(matroids())
    @settings(max_examples=60, deadline=None)
    def test_loops_are_dual_coloops(self, M):
        D = dual(M)
        assert M.loops == D.coloops and M.coloops == D.loops

    @given(matroids())
    @settings(max_examples=60, deadline=None)
    def test_cyclic_flats_are_unions_of_circuits(self, M):
        for F in M.flats:
            union = 0
            for C in M.circuits:
                if C & ~F == 0:
                    union |= C
            assert (F in M.cyclic_flats) == (union == F)


class TestBuilders:
    def test_from_sets(self):
        assert from_sets(2, 1, [[0], [1]]) == uniform(1, 2)

    def test_bases_avoiding(self):
        M = bases_avoiding(4, 2, [[0, 1]])
        assert len(M.bases) == 5 and S([0, 1]) not in M.basis_set

    def test_pickle_round_trip(self):
        import pickle

        M = uniform(2, 4)
        M.rank_table()
        N = pickle.loads(pickle.dumps(M))
        assert N == M and hash(N) == hash(M)
