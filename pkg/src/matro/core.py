"""The matroid value type, its axiomatic validation, and derived structure.

A matroid is stored by its ground-set size, rank and sorted tuple of bases
(bitmasks). Rank, closure, circuits, flats and cyclic flats are derived on
first use and cached on the instance; the bases never change after
construction, so cached values stay consistent.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from . import bits
from .bits import ElementSet, MAX_ELEMENTS, popcount
from .errors import BoundsViolated, EmptyFamily, ExchangeViolated, WrongCardinality

# Past this size the full rank table (2^n entries) is not built implicitly.
RANK_TABLE_LIMIT = 12


class Matroid:
    """A matroid on ``{0, ..., n-1}`` given by its bases.

    The constructor does not check the basis axioms; use :func:`validate` for
    untrusted input. Unvalidated instances are still useful: the verification
    harness feeds deliberately corrupted families through the same code paths.
    """

    __slots__ = ("n", "r", "bases", "_cache")

    def __init__(self, n: int, r: int, bases: Iterable[ElementSet]):
        self.n = n
        self.r = r
        self.bases = tuple(sorted(set(bases)))
        self._cache: dict = {}

    def __repr__(self):
        return f"Matroid(n={self.n}, r={self.r}, bases={[bits.fmt(b) for b in self.bases]})"

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return (self.n, self.r, self.bases) == (other.n, other.r, other.bases)

    def __hash__(self):
        return hash((self.n, self.r, self.bases))

    def __getstate__(self):
        return (self.n, self.r, self.bases)

    def __setstate__(self, state):
        self.n, self.r, self.bases = state
        self._cache = {}

    @property
    def ground(self) -> ElementSet:
        return bits.full(self.n)

    @property
    def nullity(self) -> int:
        return self.n - self.r

    @property
    def basis_set(self) -> frozenset[ElementSet]:
        try:
            return self._cache["basis_set"]
        except KeyError:
            s = self._cache["basis_set"] = frozenset(self.bases)
            return s

    def is_basis(self, A: ElementSet) -> bool:
        return A in self.basis_set

    # --- rank -----------------------------------------------------------

    def independence_table(self) -> bytearray:
        """``table[A]`` is 1 iff ``A`` is independent (a subset of some basis)."""
        table = self._cache.get("indep")
        if table is None:
            size = 1 << self.n
            table = bytearray(size)
            for b in self.bases:
                table[b] = 1
            singles = [1 << i for i in range(self.n)]
            for A in range(size - 1, 0, -1):
                if table[A]:
                    for s in singles:
                        if A & s:
                            table[A ^ s] = 1
            self._cache["indep"] = table
        return table

    def rank_table(self) -> list[int]:
        """``table[A] = r(A)`` for every subset ``A`` of the ground set."""
        table = self._cache.get("rank")
        if table is None:
            indep = self.independence_table()
            size = 1 << self.n
            table = [0] * size
            singles = [1 << i for i in range(self.n)]
            for A in range(1, size):
                if indep[A]:
                    table[A] = popcount(A)
                else:
                    best = 0
                    for s in singles:
                        if A & s:
                            v = table[A ^ s]
                            if v > best:
                                best = v
                    table[A] = best
            self._cache["rank"] = table
        return table

    def rank_of(self, A: ElementSet) -> int:
        if "rank" in self._cache or self.n <= RANK_TABLE_LIMIT:
            return self.rank_table()[A]
        return max(popcount(b & A) for b in self.bases)

    def is_independent(self, A: ElementSet) -> bool:
        if "indep" in self._cache or self.n <= RANK_TABLE_LIMIT:
            return bool(self.independence_table()[A])
        return any(A & ~b == 0 for b in self.bases)

    def closure(self, A: ElementSet) -> ElementSet:
        rA = self.rank_of(A)
        out = A
        for e in range(self.n):
            bit = 1 << e
            if not A & bit and self.rank_of(A | bit) == rA:
                out |= bit
        return out

    # --- derived families -------------------------------------------------

    @property
    def loops(self) -> ElementSet:
        union = 0
        for b in self.bases:
            union |= b
        return self.ground & ~union

    @property
    def coloops(self) -> ElementSet:
        inter = self.ground
        for b in self.bases:
            inter &= b
        return inter

    @property
    def circuits(self) -> tuple[ElementSet, ...]:
        """Minimal dependent sets, sorted numerically by mask."""
        out = self._cache.get("circuits")
        if out is None:
            indep = self.independence_table()
            found = []
            for A in range(1, 1 << self.n):
                if indep[A]:
                    continue
                rest = A
                minimal = True
                while rest:
                    s = rest & -rest
                    rest ^= s
                    if not indep[A ^ s]:
                        minimal = False
                        break
                if minimal:
                    found.append(A)
            out = self._cache["circuits"] = tuple(found)
        return out

    @property
    def flats(self) -> tuple[ElementSet, ...]:
        out = self._cache.get("flats")
        if out is None:
            rank = self.rank_table()
            singles = [1 << i for i in range(self.n)]
            found = []
            for A in range(1 << self.n):
                rA = rank[A]
                if all(A & s or rank[A | s] > rA for s in singles):
                    found.append(A)
            out = self._cache["flats"] = tuple(found)
        return out

    def flats_of_rank(self, k: int) -> list[ElementSet]:
        rank = self.rank_table()
        return [F for F in self.flats if rank[F] == k]

    @property
    def hyperplanes(self) -> list[ElementSet]:
        return self.flats_of_rank(self.r - 1)

    @property
    def cyclic_flats(self) -> tuple[ElementSet, ...]:
        """Flats with no coloop in their restriction, i.e. unions of circuits."""
        out = self._cache.get("cyclic")
        if out is None:
            rank = self.rank_table()
            found = []
            for F in self.flats:
                rF = rank[F]
                rest = F
                ok = True
                while rest:
                    s = rest & -rest
                    rest ^= s
                    if rank[F ^ s] < rF:
                        ok = False
                        break
                if ok:
                    found.append(F)
            out = self._cache["cyclic"] = tuple(found)
        return out

    def is_free_element(self, e: int) -> bool:
        bit = 1 << e
        rank = self.rank_of
        return all(rank(C) == self.r for C in self.circuits if C & bit)

    def force(self) -> "Matroid":
        """Populate every lazy cache; call before sharing an instance across threads."""
        self.rank_table()
        self.circuits
        self.cyclic_flats
        self.basis_set
        return self

    def relabel(self, perm) -> "Matroid":
        """Image under ``old -> perm[old]``."""
        return Matroid(self.n, self.r, (bits.permute(b, perm) for b in self.bases))


def find_exchange_violation(bases: Iterable[ElementSet]):
    """First ``(B1, B2, e)`` for which basis exchange fails, or ``None``."""
    fam = sorted(set(bases))
    members = frozenset(fam)
    for B1 in fam:
        for B2 in fam:
            d1 = B1 & ~B2
            if not d1:
                continue
            d2 = bits.to_indices(B2 & ~B1)
            for e in bits.to_indices(d1):
                base = B1 & ~(1 << e)
                if not any(base | (1 << f) in members for f in d2):
                    return B1, B2, e
    return None


def validate(n: int, r: int, bases: Iterable[ElementSet]) -> Matroid:
    """Build a :class:`Matroid` after checking bounds, cardinalities and basis exchange."""
    if not 0 <= r <= n <= MAX_ELEMENTS:
        raise BoundsViolated(f"need 0 <= r <= n <= {MAX_ELEMENTS}, got n={n}, r={r}")
    fam = sorted(set(bases))
    if not fam:
        raise EmptyFamily()
    universe = bits.full(n)
    for B in fam:
        if B < 0 or B & ~universe:
            raise BoundsViolated(f"set {B:#x} is outside the ground set of size {n}")
        if popcount(B) != r:
            raise WrongCardinality(B, r)
    bad = find_exchange_violation(fam)
    if bad is not None:
        raise ExchangeViolated(*bad)
    return Matroid(n, r, fam)


def is_valid(M: Matroid) -> bool:
    try:
        validate(M.n, M.r, M.bases)
    except (BoundsViolated, EmptyFamily, WrongCardinality, ExchangeViolated):
        return False
    return True


def from_sets(n: int, r: int, sets: Iterable[Iterable[int]]) -> Matroid:
    """Validated matroid from bases given as index collections."""
    return validate(n, r, [bits.from_indices(s) for s in sets])


def bases_avoiding(n: int, r: int, dependent: Iterable[Iterable[int]]) -> Matroid:
    """Validated matroid whose bases are the ``r``-subsets containing none of ``dependent``."""
    dep = [bits.from_indices(d) for d in dependent]
    fam = [
        bits.from_indices(c)
        for c in combinations(range(n), r)
        if not any(d & ~bits.from_indices(c) == 0 for d in dep)
    ]
    return validate(n, r, fam)


# Module-level spellings of the oracles.


def rank_of(M: Matroid, A: ElementSet) -> int:
    return M.rank_of(A)


def closure(M: Matroid, A: ElementSet) -> ElementSet:
    return M.closure(A)


def circuits(M: Matroid) -> list[ElementSet]:
    return list(M.circuits)


def flats_of_rank(M: Matroid, k: int) -> list[ElementSet]:
    return M.flats_of_rank(k)


def cyclic_flats(M: Matroid) -> list[ElementSet]:
    return list(M.cyclic_flats)


def loops(M: Matroid) -> ElementSet:
    return M.loops


def coloops(M: Matroid) -> ElementSet:
    return M.coloops


def is_free_element(M: Matroid, e: int) -> bool:
    return M.is_free_element(e)
