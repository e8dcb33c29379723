"""Canonical labelling of matroids.

The canonical form is the relabelling that makes the characteristic vector
of the bases, listed over all ``r``-subsets in colex order, lexicographically
greatest. Colex order is what makes the search prunable: once new labels
``0..k`` are placed, every ``r``-subset of ``{0..k}`` is already decided, and
those subsets form a prefix of the vector.

Two reductions keep the search small:

* elements are coloured by an isomorphism-invariant refinement, and a label
  position may only receive an element of the matching colour;
* clone classes (pairs whose transposition is an automorphism) are symmetric,
  so only one unused member per class is tried at each position.

Exhaustive search stays practical up to ``n = 9`` for most inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .bits import ElementSet, permute
from .core import Matroid


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    r: int
    bases: tuple[ElementSet, ...]
    # relabeling[old] = new; not part of the identity of the form.
    relabeling: tuple[int, ...] = field(compare=False, hash=False)

    def matroid(self) -> Matroid:
        return Matroid(self.n, self.r, self.bases)

    @property
    def key(self):
        return (self.n, self.r, self.bases)


def transposition_preserves(M: Matroid, a: int, b: int) -> bool:
    """True iff swapping ``a`` and ``b`` maps the bases onto themselves."""
    ab = (1 << a) | (1 << b)
    members = M.basis_set
    for B in M.bases:
        hit = B & ab
        if hit and hit != ab and (B ^ ab) not in members:
            return False
    return True


def clone_classes(M: Matroid) -> list[int]:
    """``cls[e]`` is the smallest element clone-equivalent to ``e``."""
    cached = M._cache.get("clone_classes")
    if cached is not None:
        return cached
    cls = list(range(M.n))
    for a in range(M.n):
        if cls[a] != a:
            continue
        for b in range(a + 1, M.n):
            if cls[b] == b and transposition_preserves(M, a, b):
                cls[b] = a
    M._cache["clone_classes"] = cls
    return cls


def _renumber(sigs):
    order = sorted(set(sigs))
    index = {s: i for i, s in enumerate(order)}
    return [index[s] for s in sigs]


def element_colours(M: Matroid) -> list[int]:
    """Isomorphism-invariant colour per element, refined until stable."""
    cached = M._cache.get("colours")
    if cached is not None:
        return cached
    n = M.n
    circuit_profile = [[0] * (n + 1) for _ in range(n)]
    for C in M.circuits:
        size = bin(C).count("1")
        for e in range(n):
            if C >> e & 1:
                circuit_profile[e][size] += 1
    degree = [0] * n
    for B in M.bases:
        for e in range(n):
            if B >> e & 1:
                degree[e] += 1
    colours = _renumber([(degree[e], tuple(circuit_profile[e])) for e in range(n)])
    classes = len(set(colours))
    for _ in range(n):
        sigs = []
        for e in range(n):
            bit = 1 << e
            around = sorted(
                tuple(sorted(colours[x] for x in range(n) if B >> x & 1 and x != e))
                for B in M.bases
                if B & bit
            )
            sigs.append((colours[e], tuple(around)))
        colours = _renumber(sigs)
        if len(set(colours)) == classes:
            break
        classes = len(set(colours))
    M._cache["colours"] = colours
    return colours


@lru_cache(maxsize=None)
def _colex_blocks(n: int, r: int):
    """For each position k, the (r-1)-subsets of ``{0..k-1}`` in colex order."""
    blocks = []
    for k in range(n):
        if r == 0:
            blocks.append(())
            continue
        subs = sorted(combinations(range(k), r - 1), key=lambda c: c[::-1])
        blocks.append(tuple(subs))
    return tuple(blocks)


def canonical_form(M: Matroid) -> CanonicalForm:
    cached = M._cache.get("canonical")
    if cached is not None:
        return cached
    n, r = M.n, M.r
    if r == 0 or r == n:
        # Single basis; the labelling only has to put loops last.
        perm = [0] * n
        order = sorted(range(n), key=lambda e: not (M.bases[0] >> e & 1))
        for new, old in enumerate(order):
            perm[old] = new
        form = CanonicalForm(n, r, tuple(sorted(permute(b, perm) for b in M.bases)), tuple(perm))
        M._cache["canonical"] = form
        return form

    colours = element_colours(M)
    target = sorted(colours)
    clones = clone_classes(M)
    members = M.basis_set
    blocks = _colex_blocks(n, r)

    assigned = [0] * n  # assigned[position] = original element
    best_blocks: list | None = None
    best_assign: list | None = None
    current = [()] * n

    def search(k: int, used: int, ahead: bool):
        nonlocal best_blocks, best_assign
        if k == n:
            if best_blocks is None or ahead:
                best_blocks = list(current)
                best_assign = list(assigned)
            return
        want = target[k]
        tried = set()
        for e in range(n):
            if used >> e & 1 or colours[e] != want:
                continue
            c = clones[e]
            if c in tried:
                continue
            tried.add(c)
            assigned[k] = e
            ebit = 1 << e
            block = tuple(
                (ebit | sum(1 << assigned[p] for p in sub)) in members for sub in blocks[k]
            )
            now_ahead = ahead
            if best_blocks is not None and not ahead:
                ref = best_blocks[k]
                if block < ref:
                    continue
                if block > ref:
                    now_ahead = True
            current[k] = block
            search(k + 1, used | ebit, now_ahead)

    search(0, 0, False)
    perm = [0] * n
    for new, old in enumerate(best_assign):
        perm[old] = new
    form = CanonicalForm(n, r, tuple(sorted(permute(b, perm) for b in M.bases)), tuple(perm))
    M._cache["canonical"] = form
    return form


def is_isomorphic(M: Matroid, N: Matroid) -> bool:
    if (M.n, M.r, len(M.bases)) != (N.n, N.r, len(N.bases)):
        return False
    return canonical_form(M).key == canonical_form(N).key


def automorphism_count(M: Matroid) -> int:
    """Brute-force count of basis-preserving permutations (small ``n`` only)."""
    from itertools import permutations

    members = M.basis_set
    count = 0
    for perm in permutations(range(M.n)):
        if all(permute(B, perm) in members for B in M.bases):
            count += 1
    return count
