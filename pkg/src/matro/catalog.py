"""Exhaustive collections of small matroids.

Two generators are kept deliberately independent:

* :func:`brute_force_labeled` enumerates every bases family on ``[n]`` that
  satisfies basis exchange. It is the ground truth for ``n <= 6``.
* :func:`extension_representatives` grows isomorphism classes one element at
  a time: a coloop, or any single-element extension given by a linear
  subclass of hyperplanes, followed by canonical-form deduplication.

For ``n <= 6`` both are available and must agree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from . import bits
from .bits import popcount
from .canonical import canonical_form
from .core import Matroid, find_exchange_violation
from .errors import BoundsViolated, CountMismatch, ParseError
from .fileformat import basis_line, parse_block

log = logging.getLogger(__name__)

LABELED_LIMIT = 6
REPR_LIMIT = 8


@dataclass
class Catalog:
    n: int
    mode: str  # "labeled" or "repr"
    entries: list[Matroid] = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def by_rank(self, r: int) -> list[Matroid]:
        return [M for M in self.entries if M.r == r]


def _sort_key(M: Matroid):
    return (M.r, M.bases)


# --- brute force ----------------------------------------------------------------


def brute_force_labeled(n: int, r: int) -> list[Matroid]:
    """Every matroid of rank ``r`` on ``{0..n-1}``, as validated bases families.

    Candidate ``r``-sets are decided in lexicographic order. A branch is cut
    when two included sets ``B1, B2`` and ``e in B1 - B2`` admit no exchange
    partner that is still included or undecided; deciding later sets cannot
    repair that. Survivors get a full exchange check.
    """
    if not 0 <= r <= n:
        raise BoundsViolated(f"need 0 <= r <= n, got n={n}, r={r}")
    if n > LABELED_LIMIT:
        raise BoundsViolated(f"brute-force enumeration is limited to n <= {LABELED_LIMIT}")
    cands = bits.k_subsets(n, r)
    index = {S: i for i, S in enumerate(cands)}
    total = len(cands)
    included: set[int] = set()
    found: list[Matroid] = []

    def alive(T: int, i: int) -> bool:
        return T in included or index[T] > i

    def broken(B1: int, B2: int, i: int) -> bool:
        d2 = B2 & ~B1
        rest = B1 & ~B2
        while rest:
            e = rest & -rest
            rest ^= e
            base = B1 ^ e
            sub = d2
            ok = False
            while sub:
                f = sub & -sub
                sub ^= f
                if alive(base | f, i):
                    ok = True
                    break
            if not ok:
                return True
        return False

    def consistent_after_include(S: int, i: int) -> bool:
        for B in included:
            if B != S and (broken(S, B, i) or broken(B, S, i)):
                return False
        return True

    def consistent_after_exclude(S: int, i: int) -> bool:
        # Only exchanges that could have used S as the partner are affected.
        for B1 in included:
            if popcount(B1 & ~S) != 1:
                continue
            for B2 in included:
                if broken(B1, B2, i):
                    return False
        return True

    def search(i: int):
        if i == total:
            if included and find_exchange_violation(included) is None:
                found.append(Matroid(n, r, included))
            return
        S = cands[i]
        included.add(S)
        if consistent_after_include(S, i):
            search(i + 1)
        included.discard(S)
        if consistent_after_exclude(S, i):
            search(i + 1)

    search(0)
    found.sort(key=_sort_key)
    return found


def labeled_catalog(n: int) -> Catalog:
    entries = []
    for r in range(n + 1):
        entries.extend(brute_force_labeled(n, r))
    entries.sort(key=_sort_key)
    return Catalog(n, "labeled", entries)


def dedupe(matroids) -> list[Matroid]:
    """One canonical representative per isomorphism class, sorted by rank then bases."""
    seen = {}
    for M in matroids:
        form = canonical_form(M)
        seen.setdefault(form.key, form.matroid())
    return sorted(seen.values(), key=_sort_key)


def brute_force_representatives(n: int) -> list[Matroid]:
    return dedupe(labeled_catalog(n).entries)


# --- extension generator ------------------------------------------------------------


def linear_subclasses(M: Matroid) -> Iterator[frozenset[int]]:
    """Every set of hyperplanes closed under: if two members meet in a flat of
    rank ``r - 2``, every hyperplane through that flat is a member.

    Yields sets of hyperplane masks.
    """
    hyps = M.hyperplanes
    h = len(hyps)
    rank = M.rank_table()
    span = {}
    for i, j in combinations(range(h), 2):
        meet = hyps[i] & hyps[j]
        if rank[meet] == M.r - 2:
            through = 0
            for k in range(h):
                if hyps[k] & meet == meet:
                    through |= 1 << k
            span[(i, j)] = through

    def close(S: int) -> int:
        while True:
            grown = S
            members = bits.to_indices(S)
            for a, b in combinations(members, 2):
                grown |= span.get((a, b), 0)
            if grown == S:
                return S
            S = grown

    def search(i: int, chosen: int, banned: int):
        if i == h:
            yield frozenset(hyps[k] for k in bits.to_indices(chosen))
            return
        if chosen >> i & 1:
            yield from search(i + 1, chosen, banned)
            return
        grown = close(chosen | 1 << i)
        if not grown & banned:
            yield from search(i + 1, grown, banned)
        yield from search(i + 1, chosen, banned | 1 << i)

    yield from search(0, 0, 0)


def single_element_extensions(M: Matroid) -> Iterator[Matroid]:
    """All extensions of ``M`` by element ``n`` that keep the rank, one per linear subclass."""
    n, r = M.n, M.r
    new = 1 << n
    if r == 0:
        yield Matroid(n + 1, 0, M.bases)
        return
    indep = M.independence_table()
    spanning = {}
    for I in bits.k_subsets(n, r - 1):
        if indep[I]:
            spanning.setdefault(M.closure(I), []).append(I)
    for cut in linear_subclasses(M):
        fam = list(M.bases)
        for H, sets in spanning.items():
            if H not in cut:
                fam.extend(I | new for I in sets)
        yield Matroid(n + 1, r, fam)


def extension_representatives(n: int, previous: list[Matroid] | None = None) -> list[Matroid]:
    if n > REPR_LIMIT:
        raise BoundsViolated(f"representatives are limited to n <= {REPR_LIMIT}")
    if n == 0:
        return [Matroid(0, 0, [0])]
    if previous is None:
        previous = extension_representatives(n - 1)
    seen = {}
    invalid = 0
    for M in previous:
        candidates = [Matroid(n, M.r + 1, [B | 1 << (n - 1) for B in M.bases])]
        candidates.extend(single_element_extensions(M))
        for N in candidates:
            key = canonical_form(N).key
            if key in seen:
                continue
            if find_exchange_violation(N.bases) is not None:
                invalid += 1
                continue
            seen[key] = canonical_form(N).matroid()
    if invalid:
        log.warning("discarded %d invalid extensions at n=%d", invalid, n)
    return sorted(seen.values(), key=_sort_key)


def generate_representatives(n: int, method: str = "auto") -> Catalog:
    """Isomorph-free catalog on ``n`` elements.

    ``method`` is ``"brute"`` (dedupe the labeled enumeration, ``n <= 6``),
    ``"extension"`` or ``"auto"`` (brute force where available).
    """
    if n > REPR_LIMIT:
        raise BoundsViolated(f"representatives are limited to n <= {REPR_LIMIT}")
    if method == "auto":
        method = "brute" if n <= LABELED_LIMIT else "extension"
    if method == "brute":
        entries = brute_force_representatives(n)
    elif method == "extension":
        entries = extension_representatives(n)
    else:
        raise ValueError(f"unknown method {method!r}")
    return Catalog(n, "repr", entries)


# --- weak pairs -----------------------------------------------------------------------


def basis_indicator(M: Matroid) -> int:
    """Bases as a bitmask over the lexicographic list of ``r``-subsets."""
    out = 0
    for pos, S in enumerate(bits.k_subsets(M.n, M.r)):
        if S in M.basis_set:
            out |= 1 << pos
    return out


def weak_pair_indices(entries: list[Matroid]) -> Iterator[tuple[int, int]]:
    """Index pairs ``(i, j)`` with equal rank and ``bases(entries[j])`` a proper subset of ``bases(entries[i])``."""
    marks = [basis_indicator(M) for M in entries]
    ranks = {}
    for i, M in enumerate(entries):
        ranks.setdefault((M.n, M.r), []).append(i)
    for i, M in enumerate(entries):
        mi = marks[i]
        for j in ranks[(M.n, M.r)]:
            mj = marks[j]
            if mj != mi and mj & ~mi == 0:
                yield i, j


def weak_pairs(catalog) -> Iterator[tuple[Matroid, Matroid]]:
    entries = catalog.entries if isinstance(catalog, Catalog) else list(catalog)
    for i, j in weak_pair_indices(entries):
        yield entries[i], entries[j]


# --- persistence ------------------------------------------------------------------------


def format_catalog(cat: Catalog) -> str:
    lines = [f"catalog n={cat.n} mode={cat.mode} count={len(cat.entries)}"]
    for k, M in enumerate(cat.entries):
        if k:
            lines.append("")
        lines.append(f"{M.n} {M.r}")
        lines.extend(basis_line(B) for B in sorted(M.bases, key=bits.to_indices))
    return "\n".join(lines) + "\n"


def parse_catalog(text: str) -> Catalog:
    if not text.endswith("\n"):
        raise ParseError(text.count("\n") + 1, "missing final newline")
    lines = text[:-1].split("\n")
    head = lines[0].split(" ")
    try:
        if head[0] != "catalog" or len(head) != 4:
            raise ValueError
        fields = dict(part.split("=", 1) for part in head[1:])
        n, mode, count = int(fields["n"]), fields["mode"], int(fields["count"])
    except (ValueError, KeyError):
        raise ParseError(1, f"bad catalog header {lines[0]!r}") from None
    if mode not in ("labeled", "repr"):
        raise ParseError(1, f"unknown mode {mode!r}")
    entries = []
    pos = 1
    while pos < len(lines):
        if entries:
            if lines[pos] != "":
                raise ParseError(pos + 1, "expected blank line between matroids")
            pos += 1
            if pos >= len(lines):
                raise ParseError(pos + 1, "dangling separator")
        M, pos = parse_block(lines, pos, first_lineno=1)
        if M.n != n:
            raise ParseError(pos, f"matroid has n={M.n}, catalog header says n={n}")
        entries.append(M)
    if len(entries) != count:
        raise CountMismatch(f"header promises {count} matroids, found {len(entries)}")
    return Catalog(n, mode, entries)


def save(cat: Catalog, path):
    with open(path, "w") as fh:
        fh.write(format_catalog(cat))


def load(path) -> Catalog:
    with open(path) as fh:
        return parse_catalog(fh.read())

