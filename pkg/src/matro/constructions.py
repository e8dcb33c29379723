"""Operations that build new matroids from old ones, plus two named examples."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import bits
from .bits import ElementSet, MAX_ELEMENTS, popcount
from .core import Matroid, bases_avoiding, validate
from .errors import BasepointDegenerate, BoundsViolated, NotCircuitHyperplane, RankZero


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n <= MAX_ELEMENTS:
        raise BoundsViolated(f"U_{{{r},{n}}} needs 0 <= r <= n <= {MAX_ELEMENTS}")
    return Matroid(n, r, bits.k_subsets(n, r))


def loops_and_coloops(k: int, m: int) -> Matroid:
    """``U_{k,k} (+) U_{0,m}``: coloops ``0..k-1`` then loops."""
    return Matroid(k + m, k, [bits.full(k)])


def direct_sum(M: Matroid, N: Matroid) -> Matroid:
    if M.n + N.n > MAX_ELEMENTS:
        raise BoundsViolated(f"direct sum would have {M.n + N.n} elements")
    return Matroid(M.n + N.n, M.r + N.r, [a | (b << M.n) for a in M.bases for b in N.bases])


def survivors(n: int, X: ElementSet) -> tuple[int, ...]:
    """Old indices kept after removing ``X``; position ``i`` is the new index ``i``."""
    return tuple(e for e in range(n) if not X >> e & 1)


def minor(M: Matroid, delete: ElementSet = 0, contract: ElementSet = 0):
    """``M \\ delete / contract`` with its index map (new index -> old index)."""
    if delete & contract:
        raise ValueError("deleted and contracted sets must be disjoint")
    N = M
    if contract:
        rX = M.rank_of(contract)
        N = Matroid(M.n, M.r - rX, {B & ~contract for B in M.bases if popcount(B & contract) == rX})
    if delete:
        keep = N.ground & ~delete
        trimmed = {B & keep for B in N.bases}
        top = max(map(popcount, trimmed))
        N = Matroid(N.n, top, {B for B in trimmed if popcount(B) == top})
    keep = survivors(M.n, delete | contract)
    out = Matroid(len(keep), N.r, (bits.compress(B, keep) for B in N.bases))
    return out, keep


def delete(M: Matroid, X: ElementSet) -> Matroid:
    return minor(M, delete=X)[0]


def contract(M: Matroid, X: ElementSet) -> Matroid:
    return minor(M, contract=X)[0]


def restrict(M: Matroid, X: ElementSet) -> Matroid:
    return delete(M, M.ground & ~X)


def dual(M: Matroid) -> Matroid:
    E = M.ground
    return Matroid(M.n, M.n - M.r, (E & ~B for B in M.bases))


def truncation(M: Matroid) -> Matroid:
    """Independent sets of size at most ``r - 1`` become the independent sets."""
    if M.r < 1:
        raise RankZero()
    fam = set()
    for B in M.bases:
        for e in bits.to_indices(B):
            fam.add(B & ~(1 << e))
    return Matroid(M.n, M.r - 1, fam)


def truncation_via_free_extension(M: Matroid) -> Matroid:
    if M.r < 1:
        raise RankZero()
    ext = free_extension(M)
    return contract(ext, 1 << M.n)


def iterated_truncation(M: Matroid, times: int) -> Matroid:
    for _ in range(times):
        M = truncation(M)
    return M


def free_extension(M: Matroid) -> Matroid:
    """Add element ``n`` freely, without raising the rank."""
    if M.n + 1 > MAX_ELEMENTS:
        raise BoundsViolated("free extension would exceed the element limit")
    new = 1 << M.n
    fam = set(M.bases)
    if M.r > 0:
        for B in M.bases:
            for e in bits.to_indices(B):
                fam.add((B & ~(1 << e)) | new)
    return Matroid(M.n + 1, M.r, fam)


def is_circuit_hyperplane(M: Matroid, X: ElementSet) -> bool:
    return X in M.circuits and M.closure(X) == X and M.rank_of(X) == M.r - 1


def relax(M: Matroid, X: ElementSet) -> Matroid:
    if not is_circuit_hyperplane(M, X):
        raise NotCircuitHyperplane(f"{bits.fmt(X)} is not a circuit-hyperplane")
    return Matroid(M.n, M.r, M.bases + (X,))


def circuit_hyperplanes(M: Matroid) -> list[ElementSet]:
    return [C for C in M.circuits if popcount(C) == M.r and M.closure(C) == C]


def from_circuits(n: int, circuits) -> Matroid:
    """Matroid whose independent sets are the sets containing no listed circuit."""
    circ = list(circuits)
    indep = [A for A in range(1 << n) if not any(C & ~A == 0 for C in circ)]
    r = max(map(popcount, indep))
    return validate(n, r, [A for A in indep if popcount(A) == r])


def parallel_connection(M1: Matroid, M2: Matroid, p1: int, p2: int):
    """Glue ``M1`` and ``M2`` by identifying ``p1`` with ``p2``.

    The result keeps ``M1``'s labels (the basepoint stays at ``p1``) and
    appends the elements of ``M2`` other than ``p2`` in their original order.
    Returns the matroid and the map from ``M2``'s indices to the new ones.
    """
    for M, p in ((M1, p1), (M2, p2)):
        if M.loops >> p & 1 or M.coloops >> p & 1:
            raise BasepointDegenerate(f"basepoint {p} is a loop or coloop")
    n = M1.n + M2.n - 1
    if n > MAX_ELEMENTS:
        raise BoundsViolated(f"parallel connection would have {n} elements")
    embed2 = []
    nxt = M1.n
    for e in range(M2.n):
        if e == p2:
            embed2.append(p1)
        else:
            embed2.append(nxt)
            nxt += 1
    pbit = 1 << p1
    c1 = list(M1.circuits)
    c2 = [bits.permute(C, embed2) for C in M2.circuits]
    glued = [
        (a | b) & ~pbit for a in c1 if a & pbit for b in c2 if b & pbit
    ]
    P = from_circuits(n, c1 + c2 + glued)
    if P.r != M1.r + M2.r - 1:
        raise AssertionError(f"parallel connection has rank {P.r}, expected {M1.r + M2.r - 1}")
    return P, tuple(embed2)


def two_sum(M1: Matroid, M2: Matroid, p1: int, p2: int):
    """Parallel connection with the basepoint deleted; returns the matroid and M2's index map."""
    P, embed2 = parallel_connection(M1, M2, p1, p2)
    S, keep = minor(P, delete=1 << p1)
    where = {old: new for new, old in enumerate(keep)}
    return S, tuple(where.get(e) for e in embed2)


@dataclass(frozen=True)
class NamedExample:
    name: str
    matroid: Matroid
    labels: dict[int, str]

    def element(self, label: str) -> int:
        for i, lab in self.labels.items():
            if lab == label:
                return i
        raise KeyError(label)


FIGURE2_LABELS = ("x1", "x2", "x3", "x3'", "x4", "x5", "x6")


def figure2_example() -> NamedExample:
    """Rank-3 matroid on seven points: lines x1 x2 x3 and x3 x4 x5, x3' parallel to x3, x6 free."""
    x1, x2, x3, x3p, x4, x5, x6 = range(7)
    dependent = [
        (x3, x3p),
        (x1, x2, x3),
        (x1, x2, x3p),
        (x3, x4, x5),
        (x3p, x4, x5),
    ]
    M = bases_avoiding(7, 3, dependent)
    return NamedExample("figure2", M, dict(enumerate(FIGURE2_LABELS)))


def counterexample_sec4() -> NamedExample:
    """Rank-5, 11-element matroid with f freer than g, no spanning circuits through either, yet f and g not clones.

    Built from a rank-3 matroid M1 on g,a,b,f,p,c (only non-spanning circuit
    {g,a,b}) and two 4-point lines through the shared basepoint p: parallel
    connect the two lines at p, parallel connect the result with M1 at p,
    then delete p.
    """
    g, a, b, f, p, c = range(6)
    M1 = bases_avoiding(6, 3, [(g, a, b)])
    line = uniform(2, 4)
    # Lines glued on their element 0; the composite keeps line-one labels 0..3.
    L, embed3 = parallel_connection(line, line, 0, 0)
    P, embedL = parallel_connection(M1, L, p, 0)
    S, keep = minor(P, delete=1 << p)
    where = {old: new for new, old in enumerate(keep)}
    labels = {}
    for name, old in zip("gabfpc", range(6)):
        if old != p:
            labels[where[old]] = name
    for i in range(1, 4):
        labels[where[embedL[i]]] = f"l{i}"
    for i in range(1, 4):
        labels[where[embedL[embed3[i]]]] = f"m{i}"
    if S.r != 5 or S.n != 11:
        raise AssertionError(f"counterexample gluing gave n={S.n}, r={S.r}; expected n=11, r=5")
    return NamedExample("counterexample_sec4", S, dict(sorted(labels.items())))
