from math import factorial

from hypothesis import given, settings
from hypothesis import strategies as st

from matro.bits import from_indices as S
from matro.canonical import automorphism_count, canonical_form, clone_classes, is_isomorphic
from matro.catalog import brute_force_representatives
from matro.constructions import figure2_example, uniform
from matro.core import Matroid, bases_avoiding

from helpers import labeled, matroids


class TestCanonicalForm:
    def test_swap_symmetry(self):
        M = Matroid(2, 1, [S([0])])
        N = Matroid(2, 1, [S([1])])
        assert canonical_form(M) == canonical_form(N)
        assert canonical_form(uniform(1, 2)).key == canonical_form(uniform(1, 2).relabel([1, 0])).key

    def test_figure2_clone_swap(self):
        ex = figure2_example()
        perm = list(range(7))
        a, b = ex.element("x3"), ex.element("x3'")
        perm[a], perm[b] = b, a
        assert canonical_form(ex.matroid) == canonical_form(ex.matroid.relabel(perm))

    def test_distinguishes_basis_counts(self):
        assert not is_isomorphic(uniform(2, 4), bases_avoiding(4, 2, [[0, 1]]))

    def test_relabeling_reproduces_form(self):
        M = figure2_example().matroid
        form = canonical_form(M)
        assert M.relabel(form.relabeling) == form.matroid()

    @given(matroids(n_max=6, min_n=1), st.randoms(use_true_random=False))
    @settings(max_examples=80, deadline=None)
    def test_relabel_invariance(self, M, rnd):
        perm = list(range(M.n))
        rnd.shuffle(perm)
        assert canonical_form(M.relabel(perm)).key == canonical_form(M).key

    def test_orbit_sizes_sum_to_labeled_counts(self):
        for n in range(5):
            reps = brute_force_representatives(n)
            assert sum(factorial(n) // automorphism_count(M) for M in reps) == len(labeled(n))

    def test_isomorphism_classes_are_orbits(self):
        # Two labeled matroids share a form iff some permutation maps one onto the other.
        from itertools import permutations

        entries = labeled(3)
        for M in entries:
            orbit = {M.relabel(list(p)) for p in permutations(range(3))}
            for N in entries:
                assert is_isomorphic(M, N) == (N in orbit)


class TestCloneClasses:
    def test_figure2(self):
        ex = figure2_example()
        cls = clone_classes(ex.matroid)
        e = ex.element
        assert cls[e("x1")] == cls[e("x2")]
        assert cls[e("x3")] == cls[e("x3'")]
        assert cls[e("x4")] == cls[e("x5")]
        assert len(set(cls)) == 4
