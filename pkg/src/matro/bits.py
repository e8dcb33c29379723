"""Subsets of a small ground set, stored as plain integer bitmasks.

An element set over a ground set ``{0, ..., n-1}`` (``n <= 16``) is an ``int``
whose bit ``i`` is set when element ``i`` belongs to the set. Everything in
the package passes these masks around directly; the helpers below cover the
handful of operations that are not single operators.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

MAX_ELEMENTS = 16

ElementSet = int


def full(n: int) -> ElementSet:
    return (1 << n) - 1


def from_indices(indices: Iterable[int]) -> ElementSet:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def to_indices(mask: ElementSet) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: ElementSet) -> int:
    return bin(mask).count("1")


def lowest(mask: ElementSet) -> int:
    """Index of the lowest set bit; ``mask`` must be nonzero."""
    return (mask & -mask).bit_length() - 1


def k_subsets(n: int, k: int) -> list[ElementSet]:
    """All ``k``-subsets of ``{0..n-1}`` in lexicographic order of their index tuples."""
    if k < 0 or k > n:
        return []
    return [from_indices(c) for c in combinations(range(n), k)]


def submasks(mask: ElementSet) -> Iterator[ElementSet]:
    """Every subset of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def compress(mask: ElementSet, keep: tuple[int, ...]) -> ElementSet:
    """Re-index ``mask`` onto positions ``0..len(keep)-1``; ``keep`` lists surviving old indices."""
    out = 0
    for new, old in enumerate(keep):
        if mask >> old & 1:
            out |= 1 << new
    return out


def permute(mask: ElementSet, perm: tuple[int, ...] | list[int]) -> ElementSet:
    """Image of ``mask`` under ``old -> perm[old]``."""
    out = 0
    for i in to_indices(mask):
        out |= 1 << perm[i]
    return out


def fmt(mask: ElementSet) -> str:
    return "{" + ",".join(map(str, to_indices(mask))) + "}"
