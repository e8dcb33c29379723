"""Exact Tutte polynomials.

Two independent routes are provided: the corank-nullity subset sum and
memoised deletion-contraction. Coefficients are Python ints and evaluations
use :class:`fractions.Fraction`, so every sign decision is exact.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Optional

from .bits import popcount
from .canonical import canonical_form
from .constructions import minor
from .core import Matroid
from .errors import NonpositivePoint

Rational = Fraction


@dataclass(frozen=True)
class TuttePoly:
    """``coeffs[i][j]`` is the coefficient of ``x^i y^j``."""

    coeffs: tuple[tuple[int, ...], ...]

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "TuttePoly":
        return cls(tuple(tuple(c if (a, b) == (i, j) else 0 for b in range(j + 1)) for a in range(i + 1)))

    @property
    def rows(self) -> int:
        return len(self.coeffs)

    @property
    def cols(self) -> int:
        return len(self.coeffs[0])

    def __add__(self, other: "TuttePoly") -> "TuttePoly":
        rows = max(self.rows, other.rows)
        cols = max(self.cols, other.cols)
        grid = [[0] * cols for _ in range(rows)]
        for src in (self, other):
            for i, row in enumerate(src.coeffs):
                for j, c in enumerate(row):
                    grid[i][j] += c
        return TuttePoly(tuple(map(tuple, grid)))

    def __sub__(self, other: "TuttePoly") -> "TuttePoly":
        return self + other.scaled(-1)

    def scaled(self, k: int) -> "TuttePoly":
        return TuttePoly(tuple(tuple(k * c for c in row) for row in self.coeffs))

    def shifted(self, dx: int, dy: int) -> "TuttePoly":
        """Multiply by ``x^dx y^dy``."""
        if not dx and not dy:
            return self
        pad = (0,) * dy
        rows = tuple((0,) * (self.cols + dy) for _ in range(dx))
        return TuttePoly(rows + tuple(pad + row for row in self.coeffs))

    def __mul__(self, other: "TuttePoly") -> "TuttePoly":
        grid = [[0] * (self.cols + other.cols - 1) for _ in range(self.rows + other.rows - 1)]
        for i, row in enumerate(self.coeffs):
            for j, a in enumerate(row):
                if a:
                    for k, orow in enumerate(other.coeffs):
                        for l, b in enumerate(orow):
                            grid[i + k][j + l] += a * b
        return TuttePoly(tuple(map(tuple, grid)))

    def transpose(self) -> "TuttePoly":
        return TuttePoly(tuple(zip(*self.coeffs)))

    def trimmed(self) -> "TuttePoly":
        """Drop trailing zero rows and columns (keeping at least one entry)."""
        grid = [list(row) for row in self.coeffs]
        while len(grid) > 1 and not any(grid[-1]):
            grid.pop()
        while len(grid[0]) > 1 and not any(row[-1] for row in grid):
            for row in grid:
                row.pop()
        return TuttePoly(tuple(map(tuple, grid)))

    def terms(self) -> dict[tuple[int, int], int]:
        return {(i, j): c for i, row in enumerate(self.coeffs) for j, c in enumerate(row) if c}

    def same_polynomial(self, other: "TuttePoly") -> bool:
        return self.terms() == other.terms()

    def evaluate(self, x, y) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        total = Fraction(0)
        for row in reversed(self.coeffs):
            inner = Fraction(0)
            for c in reversed(row):
                inner = inner * y + c
            total = total * x + inner
        return total

    def __str__(self):
        parts = []
        for (i, j), c in sorted(self.terms().items(), key=lambda t: (-t[0][0] - t[0][1], -t[0][0])):
            mono = "".join(
                v if p == 1 else f"{v}^{p}" for v, p in (("x", i), ("y", j)) if p
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"


def _empty_grid(M: Matroid):
    return [[0] * (M.n - M.r + 1) for _ in range(M.r + 1)]


def tutte_subset_expansion(M: Matroid) -> TuttePoly:
    """Sum ``(x-1)^(r-r(A)) (y-1)^(|A|-r(A))`` over all subsets, then change basis."""
    rank = M.rank_table()
    shifted = _empty_grid(M)
    for A in range(1 << M.n):
        rA = rank[A]
        shifted[M.r - rA][popcount(A) - rA] += 1
    grid = _empty_grid(M)
    for a, row in enumerate(shifted):
        for b, c in enumerate(row):
            if not c:
                continue
            for i in range(a + 1):
                ci = c * comb(a, i) * (-1) ** (a - i)
                for j in range(b + 1):
                    grid[i][j] += ci * comb(b, j) * (-1) ** (b - j)
    return TuttePoly(tuple(map(tuple, grid)))


# --- deletion-contraction ---------------------------------------------------

PivotStrategy = Callable[[Matroid], int]


def lowest_index(M: Matroid) -> int:
    return 0


def highest_index(M: Matroid) -> int:
    return M.n - 1


def busiest_element(M: Matroid) -> int:
    """Element lying in the most bases, lowest index on ties."""
    counts = [sum(B >> e & 1 for B in M.bases) for e in range(M.n)]
    return counts.index(max(counts))


PIVOTS = {"lowest": lowest_index, "highest": highest_index, "busiest": busiest_element}


class MemoCache:
    """Tutte polynomials of loop- and coloop-free matroids, keyed by canonical form.

    A second, exact-bases table skips canonicalisation for repeated labelled
    inputs. With ``directory`` set, entries are also persisted one JSON file per
    canonical form; unreadable or mismatched files are ignored and recomputed.
    """

    def __init__(self, directory: Optional[str] = None):
        self.by_form: dict = {}
        self.by_bases: dict = {}
        self.hits = 0
        self.misses = 0
        self.directory = directory
        if directory:
            os.makedirs(directory, exist_ok=True)

    def __len__(self):
        return len(self.by_form)

    @property
    def hit_rate(self) -> float:
        total = self.hits + self.misses
        return self.hits / total if total else 0.0

    def _path(self, key) -> str:
        digest = hashlib.sha256(repr(key).encode()).hexdigest()
        return os.path.join(self.directory, digest + ".json")

    def _load(self, key) -> Optional[TuttePoly]:
        try:
            with open(self._path(key)) as fh:
                data = json.load(fh)
            if tuple(data["key"][:2]) != key[:2] or tuple(data["key"][2]) != key[2]:
                return None
            coeffs = tuple(tuple(int(c) for c in row) for row in data["coeffs"])
            if len(coeffs) != key[1] + 1 or any(len(row) != key[0] - key[1] + 1 for row in coeffs):
                return None
            return TuttePoly(coeffs)
        except (OSError, ValueError, KeyError, TypeError, IndexError):
            return None

    def _store(self, key, poly: TuttePoly):
        tmp = self._path(key) + f".{os.getpid()}.tmp"
        try:
            with open(tmp, "w") as fh:
                json.dump({"key": [key[0], key[1], list(key[2])], "coeffs": poly.coeffs}, fh)
            os.replace(tmp, self._path(key))
        except OSError:
            pass

    def lookup(self, M: Matroid) -> Optional[TuttePoly]:
        exact = (M.n, M.r, M.bases)
        hit = self.by_bases.get(exact)
        if hit is not None:
            self.hits += 1
            return hit
        key = canonical_form(M).key
        hit = self.by_form.get(key)
        if hit is None and self.directory:
            hit = self._load(key)
            if hit is not None:
                self.by_form[key] = hit
        if hit is not None:
            self.by_bases[exact] = hit
            self.hits += 1
            return hit
        self.misses += 1
        return None

    def store(self, M: Matroid, poly: TuttePoly):
        key = canonical_form(M).key
        self.by_form[key] = poly
        self.by_bases[(M.n, M.r, M.bases)] = poly
        if self.directory:
            self._store(key, poly)


def tutte_delcon(
    M: Matroid, cache: Optional[MemoCache] = None, pivot: PivotStrategy = lowest_index
) -> TuttePoly:
    """Deletion-contraction after peeling loops (factor ``y``) and coloops (factor ``x``)."""
    peel = M.loops | M.coloops
    if peel:
        core, _ = minor(M, delete=peel)
        inner = _core_tutte(core, cache, pivot)
        return inner.shifted(popcount(M.coloops), popcount(M.loops))
    return _core_tutte(M, cache, pivot)


def _core_tutte(M: Matroid, cache, pivot) -> TuttePoly:
    if M.n == 0:
        return TuttePoly(((1,),))
    if cache is not None:
        hit = cache.lookup(M)
        if hit is not None:
            return hit
    e = pivot(M)
    d, _ = minor(M, delete=1 << e)
    c, _ = minor(M, contract=1 << e)
    poly = tutte_delcon(d, cache, pivot) + tutte_delcon(c, cache, pivot)
    if cache is not None:
        cache.store(M, poly)
    return poly


def tutte(M: Matroid, cache: Optional[MemoCache] = None) -> TuttePoly:
    """Tutte polynomial of ``M``, cached on the instance."""
    poly = M._cache.get("tutte")
    if poly is None:
        poly = M._cache["tutte"] = tutte_delcon(M, cache)
    return poly


# --- evaluation and comparisons ---------------------------------------------


def evaluate(T: TuttePoly, x, y) -> Fraction:
    return T.evaluate(x, y)


def count_bases(M: Matroid) -> int:
    return int(tutte(M).evaluate(1, 1))


def count_independent(M: Matroid) -> int:
    return int(tutte(M).evaluate(2, 1))


def count_spanning(M: Matroid) -> int:
    return int(tutte(M).evaluate(1, 2))


def sign(v) -> int:
    return (v > 0) - (v < 0)


def hyperbola_check(M: Matroid, x, T: Optional[TuttePoly] = None) -> bool:
    """``T(M; x, x/(x-1)) == (x-1)^r (x/(x-1))^n`` exactly, for rational ``x > 1``."""
    x = Fraction(x)
    if x <= 1:
        raise ValueError("hyperbola points need x > 1")
    y = x / (x - 1)
    T = T if T is not None else tutte(M)
    return T.evaluate(x, y) == (x - 1) ** M.r * y ** M.n


def sign_compare(Tm: TuttePoly, Tn: TuttePoly, x, y) -> int:
    """Exact sign of ``Tm(x, y) - Tn(x, y)`` for positive ``x, y``."""
    x, y = Fraction(x), Fraction(y)
    if x <= 0 or y <= 0:
        raise NonpositivePoint(f"evaluation point ({x}, {y}) is not in the open first quadrant")
    return sign(Tm.evaluate(x, y) - Tn.evaluate(x, y))


def hyperbola_sign(x, y) -> int:
    """``sgn(x + y - xy)``."""
    x, y = Fraction(x), Fraction(y)
    return sign(x + y - x * y)
