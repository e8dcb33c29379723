"""Shared fixtures-by-import: small catalogs and brute-force oracles that do
not go through the library's cached tables."""

from functools import lru_cache
from hypothesis import strategies as st

from matro import bits
from matro.catalog import labeled_catalog
from matro.core import Matroid, find_exchange_violation


@lru_cache(maxsize=None)
def labeled(n):
    return tuple(labeled_catalog(n).entries)


@lru_cache(maxsize=None)
def small_pool(n_max=5):
    return tuple(M for n in range(n_max + 1) for M in labeled(n))


def matroids(n_max=5, min_n=0):
    """Hypothesis strategy: a random labeled matroid, randomly relabelled."""
    pool = [M for M in small_pool(n_max) if M.n >= min_n]

    @st.composite
    def build(draw):
        M = draw(st.sampled_from(pool))
        perm = draw(st.permutations(range(M.n)))
        return M.relabel(list(perm))

    return build()


def brute_rank(M: Matroid, A: int) -> int:
    return max(bits.popcount(A & B) for B in M.bases)


def brute_independent(M: Matroid):
    return [A for A in range(1 << M.n) if any(A & ~B == 0 for B in M.bases)]


def brute_spanning(M: Matroid):
    return [A for A in range(1 << M.n) if any(B & ~A == 0 for B in M.bases)]


def brute_circuits(M: Matroid):
    indep = set(brute_independent(M))
    dep = [A for A in range(1 << M.n) if A not in indep]
    return sorted(C for C in dep if all((C & ~(1 << e)) in indep for e in bits.to_indices(C)))


def brute_flats(M: Matroid):
    out = []
    for A in range(1 << M.n):
        r = brute_rank(M, A)
        if all(brute_rank(M, A | 1 << e) > r for e in range(M.n) if not A >> e & 1):
            out.append(A)
    return out


def corrupt(entries):
    """Drop one basis from the first entry where that breaks basis exchange."""
    entries = list(entries)
    for i, M in enumerate(entries):
        for B in M.bases:
            rest = [b for b in M.bases if b != B]
            if rest and find_exchange_violation(rest) is not None:
                entries[i] = Matroid(M.n, M.r, rest)
                return entries
    raise AssertionError("no corruptible entry")
