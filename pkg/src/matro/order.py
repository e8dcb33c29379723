"""Weak maps, relative freedom of elements, clones, and per-element counts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import bits
from .bits import ElementSet, popcount
from .canonical import transposition_preserves
from .constructions import dual, minor
from .core import Matroid
from .errors import PreconditionViolated, SameElement, SizeMismatch


@dataclass(frozen=True)
class Bijection:
    forward: tuple[int, ...]

    @property
    def inverse(self) -> tuple[int, ...]:
        inv = [0] * len(self.forward)
        for i, j in enumerate(self.forward):
            inv[j] = i
        return tuple(inv)

    @classmethod
    def identity(cls, n: int) -> "Bijection":
        return cls(tuple(range(n)))

    def preimage(self, A: ElementSet) -> ElementSet:
        return bits.permute(A, self.inverse)


@dataclass(frozen=True)
class FreerWitness:
    freer: bool
    # A cyclic flat containing f and avoiding g, when f is not freer than g.
    witness: Optional[ElementSet] = None

    @property
    def relation(self) -> str:
        return "freer" if self.freer else "not_freer"

    def __bool__(self):
        return self.freer


def _check_sizes(M: Matroid, N: Matroid):
    if M.n != N.n:
        raise SizeMismatch(f"ground sets differ in size: {M.n} vs {N.n}")


def _check_pair(M: Matroid, f: int, g: int):
    if f == g:
        raise SameElement(f)
    for e in (f, g):
        if not 0 <= e < M.n:
            raise IndexError(f"element {e} outside ground set of size {M.n}")


# --- weak maps ----------------------------------------------------------------


def is_weak_map(M: Matroid, N: Matroid, phi: Bijection) -> bool:
    """Preimages of independent sets of ``N`` are independent in ``M``.

    Checking the bases of ``N`` suffices because independence is closed
    under taking subsets.
    """
    _check_sizes(M, N)
    inv = phi.inverse
    return all(M.is_independent(bits.permute(B, inv)) for B in N.bases)


def is_rp_weak_map(M: Matroid, N: Matroid, phi: Bijection) -> bool:
    return M.r == N.r and is_weak_map(M, N, phi)


def identity_is_rp_weak_map(M: Matroid, N: Matroid) -> bool:
    _check_sizes(M, N)
    return M.r == N.r and N.basis_set <= M.basis_set


def find_rp_weak_map(M: Matroid, N: Matroid) -> Optional[Bijection]:
    """Some bijection making ``N`` a rank-preserving weak-map image of ``M``, or ``None``."""
    _check_sizes(M, N)
    if M.r != N.r or len(N.bases) > len(M.bases):
        return None
    if popcount(M.loops) > popcount(N.loops) or popcount(M.coloops) > popcount(N.coloops):
        return None
    n = M.n
    m_loops, m_coloops = M.loops, M.coloops
    n_loops, n_coloops = N.loops, N.coloops
    # Bases of N become checkable once every element is placed; index them by
    # their highest element so each is tested exactly once.
    by_top: list[list[ElementSet]] = [[] for _ in range(n)]
    for B in N.bases:
        if B:
            by_top[B.bit_length() - 1].append(B)
    inv = [-1] * n  # inv[element of N] = element of M

    def allowed(m: int, t: int) -> bool:
        if m_loops >> m & 1 and not n_loops >> t & 1:
            return False
        if m_coloops >> m & 1 and not n_coloops >> t & 1:
            return False
        return True

    def search(t: int, used: int) -> bool:
        if t == n:
            return True
        for m in range(n):
            if used >> m & 1 or not allowed(m, t):
                continue
            inv[t] = m
            if all(M.is_independent(bits.permute(B, inv)) for B in by_top[t]):
                if search(t + 1, used | 1 << m):
                    return True
        inv[t] = -1
        return False

    if not search(0, 0):
        return None
    forward = [0] * n
    for t, m in enumerate(inv):
        forward[m] = t
    return Bijection(tuple(forward))


# --- relative freedom ---------------------------------------------------------


def freer_than(M: Matroid, f: int, g: int) -> FreerWitness:
    """``f`` is freer than ``g`` iff every cyclic flat containing ``f`` contains ``g``."""
    _check_pair(M, f, g)
    fb, gb = 1 << f, 1 << g
    for F in M.cyclic_flats:
        if F & fb and not F & gb:
            return FreerWitness(False, F)
    return FreerWitness(True)


def freer_than_circuits(M: Matroid, f: int, g: int) -> bool:
    """``g`` lies in the closure of every circuit containing ``f``."""
    _check_pair(M, f, g)
    fb, gb = 1 << f, 1 << g
    return all(M.closure(C) & gb for C in M.circuits if C & fb)


def are_clones(M: Matroid, a: int, b: int) -> bool:
    """Swapping ``a`` and ``b`` is an automorphism."""
    _check_pair(M, a, b)
    return transposition_preserves(M, a, b)


def clone_pairs(M: Matroid) -> list[tuple[int, int]]:
    return [(a, b) for a in range(M.n) for b in range(a + 1, M.n) if are_clones(M, a, b)]


def phi_gf(M: Matroid, f: int, g: int):
    """Contractions ``M/f``, ``M/g`` and the map sending ``g`` to ``f`` between them."""
    Mf, keep_f = minor(M, contract=1 << f)
    Mg, keep_g = minor(M, contract=1 << g)
    where_g = {old: new for new, old in enumerate(keep_g)}
    forward = tuple(where_g[f if old == g else old] for old in keep_f)
    return Mf, Mg, Bijection(forward)


def phi_gf_check(M: Matroid, f: int, g: int) -> bool:
    """Whether ``phi_gf`` is a rank-preserving weak map from ``M/f`` to ``M/g``."""
    _check_pair(M, f, g)
    if M.loops >> g & 1:
        raise PreconditionViolated(f"element {g} is a loop")
    if not freer_than(M, f, g):
        raise PreconditionViolated(f"element {f} is not freer than {g}")
    Mf, Mg, phi = phi_gf(M, f, g)
    return is_rp_weak_map(Mf, Mg, phi)


# --- per-element counts -------------------------------------------------------


def b_through(M: Matroid, e: int) -> int:
    bit = 1 << e
    return sum(1 for B in M.bases if B & bit)


def flats_k_through(M: Matroid, e: int, k: int) -> int:
    bit = 1 << e
    return sum(1 for F in M.flats_of_rank(k) if F & bit)


def h_through(M: Matroid, e: int) -> int:
    return flats_k_through(M, e, M.r - 1)


def circuits_through(M: Matroid, e: int) -> int:
    bit = 1 << e
    return sum(1 for C in M.circuits if C & bit)


def spanning_circuits_through(M: Matroid, e: int) -> int:
    bit = 1 << e
    return sum(1 for C in M.circuits if C & bit and popcount(C) == M.r + 1)


def circuits_through_via_dual(M: Matroid, e: int) -> int:
    """Circuits through ``e`` counted as hyperplanes of the dual avoiding ``e``."""
    D = dual(M)
    return len(D.hyperplanes) - h_through(D, e)


def parallel_to(M: Matroid, g: int) -> ElementSet:
    """Elements ``e != g`` with ``{e, g}`` a circuit."""
    out = 0
    gb = 1 << g
    for C in M.circuits:
        if C & gb and popcount(C) == 2:
            out |= C & ~gb
    return out


def series_with(M: Matroid, f: int) -> ElementSet:
    """Elements ``e != f`` with ``{e, f}`` a cocircuit."""
    return parallel_to(dual(M), f)


def is_cosimple(M: Matroid) -> bool:
    D = dual(M)
    return not D.loops and not any(popcount(C) == 2 for C in D.circuits)
