"""Exhaustive verification suites.

Each suite sweeps a catalog of small matroids (and, where relevant, a grid of
positive rational points), checks one family of statements exactly, and
returns a :class:`VerificationReport`. Violations are recorded with enough
data to replay them: the matroids in file format plus the grid point.

Every suite first checks the basis axioms on its inputs, so a corrupted
catalog entry is reported even when the statement under test happens to
survive the corruption.
"""

from __future__ import annotations

import json
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from . import bits
from .bits import popcount
from .canonical import is_isomorphic
from .catalog import (
    basis_indicator,
    brute_force_representatives,
    extension_representatives,
    labeled_catalog,
    weak_pair_indices,
)
from .constructions import (
    circuit_hyperplanes,
    counterexample_sec4,
    dual,
    iterated_truncation,
    minor,
    relax,
    truncation,
    truncation_via_free_extension,
)
from .core import Matroid, find_exchange_violation
from .fileformat import format_matroid
from .order import (
    are_clones,
    b_through,
    circuits_through,
    flats_k_through,
    freer_than,
    freer_than_circuits,
    h_through,
    identity_is_rp_weak_map,
    is_cosimple,
    parallel_to,
    phi_gf_check,
    series_with,
    spanning_circuits_through,
)
from .tutte import MemoCache, TuttePoly, hyperbola_check, sign, tutte_delcon

log = logging.getLogger(__name__)

# --- grid -------------------------------------------------------------------------


@dataclass(frozen=True)
class GridPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        if self.x <= 0 or self.y <= 0:
            raise ValueError(f"grid point ({self.x}, {self.y}) is not positive")

    @property
    def on_hyperbola(self) -> bool:
        return self.x + self.y == self.x * self.y

    @property
    def expected(self) -> int:
        """``sgn(x + y - xy)``."""
        return sign(self.x + self.y - self.x * self.y)

    def label(self) -> list[str]:
        return [str(self.x), str(self.y)]


def _pt(x, y) -> GridPoint:
    return GridPoint(Fraction(x), Fraction(y))


# Three sign regimes; (3/2, 3), (2, 2), (3, 3/2) lie on x + y = xy.
DEFAULT_GRID = (
    _pt(1, 1),
    _pt(2, 1),
    _pt(1, 2),
    _pt("1/2", "1/2"),
    _pt("1/2", 3),
    _pt("3/2", "3/2"),
    _pt(2, 2),
    _pt("3/2", 3),
    _pt(3, "3/2"),
    _pt(3, 3),
    _pt(4, 5),
    _pt("5/2", 2),
)

HYPERBOLA_XS = (Fraction(3, 2), Fraction(2), Fraction(3))
AXIS_SAMPLES = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))


def parse_rational(token: str) -> Fraction:
    """``p/q`` or an integer; decimal points are rejected."""
    if "." in token or "e" in token.lower():
        raise ValueError(f"rational {token!r} must be written as p/q or an integer")
    return Fraction(token)


def parse_grid(text: str) -> tuple[GridPoint, ...]:
    points = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"grid line {lineno}: expected 'x y', got {line!r}")
        points.append(GridPoint(parse_rational(parts[0]), parse_rational(parts[1])))
    if not points:
        raise ValueError("grid file has no points")
    return tuple(points)


# --- reports ----------------------------------------------------------------------


@dataclass
class VerificationReport:
    suite: str
    n: int
    grid: list = field(default_factory=list)
    instances: int = 0
    failures: list = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, matroids: Iterable[Matroid], point=None, expected=None, actual=None, note=""):
        self.failures.append(
            {
                "matroids": [format_matroid(M) for M in matroids],
                "point": point.label() if isinstance(point, GridPoint) else point,
                "expected": expected,
                "actual": actual,
                "note": note,
            }
        )

    def merge(self, instances: int, failures: list):
        self.instances += instances
        self.failures.extend(failures)

    def finish(self, started: float) -> "VerificationReport":
        self.failures.sort(key=lambda f: json.dumps(f, sort_keys=True))
        self.elapsed_ms = int((time.perf_counter() - started) * 1000)
        return self

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "n": self.n,
            "grid": self.grid,
            "instances": self.instances,
            "failures": self.failures,
            "elapsed_ms": self.elapsed_ms,
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}: {self.instances} instances, {len(self.failures)} failures, {self.elapsed_ms} ms"


# --- the matroid universe ---------------------------------------------------------


class Universe:
    """Catalogs the suites sweep, built lazily and shared between suites.

    ``labeled`` and ``reps`` override the generated catalogs per ``n``; tests
    use this to inject corrupted entries.
    """

    def __init__(self, labeled=None, reps=None, cache: Optional[MemoCache] = None, seed: int = 42):
        self._labeled = dict(labeled or {})
        self._reps = dict(reps or {})
        self.cache = cache if cache is not None else MemoCache()
        self.seed = seed

    def labeled(self, n: int) -> list[Matroid]:
        if n not in self._labeled:
            self._labeled[n] = labeled_catalog(n).entries
        return self._labeled[n]

    def reps(self, n: int) -> list[Matroid]:
        if n not in self._reps:
            if n <= 6:
                self._reps[n] = brute_force_representatives(n)
            else:
                self._reps[n] = extension_representatives(n, self.reps(n - 1))
        return self._reps[n]

    def tutte(self, M: Matroid) -> TuttePoly:
        poly = M._cache.get("tutte")
        if poly is None:
            poly = M._cache["tutte"] = tutte_delcon(M, self.cache)
        return poly


def _check_axioms(report: VerificationReport, entries: Iterable[Matroid]) -> list[Matroid]:
    """Record invalid entries as failures; return the entries."""
    entries = list(entries)
    for M in entries:
        report.instances += 1
        bad = find_exchange_violation(M.bases)
        if bad is not None or not M.bases or any(popcount(B) != M.r for B in M.bases):
            note = "not a matroid"
            if bad is not None:
                b1, b2, e = bad
                note = f"basis exchange fails for B1={bits.fmt(b1)}, B2={bits.fmt(b2)}, e={e}"
            report.fail([M], note=note)
    return entries


def _fan_out(func: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * jobs))))


def _scaled_values(polys: list[TuttePoly], ns: list[int], rs: list[int], point: GridPoint) -> list[int]:
    """``T(x, y) * q^r * t^(n-r)`` for ``x = p/q``, ``y = s/t``: exact integers
    whose order matches the order of the values among matroids of equal ``n`` and ``r``."""
    q, t = point.x.denominator, point.y.denominator
    out = []
    for T, n, r in zip(polys, ns, rs):
        v = T.evaluate(point.x, point.y) * q**r * t ** (n - r)
        assert v.denominator == 1
        out.append(v.numerator)
    return out


def _spot_pairs(universe: Universe, n: int, rounds: int = 3) -> tuple[list[Matroid], list[tuple[int, int]]]:
    """Weak pairs among representatives and random relabelings of them, for ``n`` beyond the labeled catalogs."""
    rng = random.Random(universe.seed * 1000 + n)
    reps = universe.reps(n)
    pool = list(reps)
    for M in reps:
        for _ in range(rounds):
            perm = list(range(n))
            rng.shuffle(perm)
            pool.append(M.relabel(perm))
    marks = [basis_indicator(M) for M in pool]
    pairs = []
    for i, M in enumerate(reps):
        for j, N in enumerate(pool):
            if N.r == M.r and marks[j] != marks[i] and marks[j] & ~marks[i] == 0:
                pairs.append((i, j))
    return pool, pairs


def _pair_source(universe: Universe, n: int):
    if n <= 6:
        entries = universe.labeled(n)
        return entries, list(weak_pair_indices(entries))
    return _spot_pairs(universe, n)


# --- suites -----------------------------------------------------------------------


def suite_main_theorem(n_max: int = 6, grid=DEFAULT_GRID, universe: Optional[Universe] = None) -> VerificationReport:
    """For every rank-preserving weak pair, ``sgn(T(M) - T(N)) = sgn(x + y - xy)``.

    Pairs are identity weak maps with ``bases(N)`` strictly inside
    ``bases(M)``; differing basis counts rule out ``M`` isomorphic to ``N``.
    """
    universe = universe or Universe()
    started = time.perf_counter()
    report = VerificationReport("main", n_max, [p.label() for p in grid])
    for n in range(n_max + 1):
        entries, pairs = _pair_source(universe, n)
        _check_axioms(report, entries)
        polys = [universe.tutte(M) for M in entries]
        ns = [M.n for M in entries]
        rs = [M.r for M in entries]
        for point in grid:
            vals = _scaled_values(polys, ns, rs, point)
            want = point.expected
            for i, j in pairs:
                got = sign(vals[i] - vals[j])
                if got != want:
                    report.fail([entries[i], entries[j]], point, want, got)
            report.instances += len(pairs)
    return report.finish(started)


def suite_lucas(n_max: int = 6, universe: Optional[Universe] = None) -> VerificationReport:
    """Strict growth of basis, independent-set and spanning-set counts, and
    the axis inequalities (loopless ``M`` on ``y = 0``, coloop-free ``M`` on ``x = 0``)."""
    universe = universe or Universe()
    started = time.perf_counter()
    report = VerificationReport("lucas", n_max, [])
    counting = ((1, 1), (2, 1), (1, 2))
    for n in range(n_max + 1):
        entries, pairs = _pair_source(universe, n)
        _check_axioms(report, entries)
        polys = [universe.tutte(M) for M in entries]
        cache = {}

        def value(i, x, y):
            key = (i, x, y)
            if key not in cache:
                cache[key] = polys[i].evaluate(x, y)
            return cache[key]

        for i, j in pairs:
            M, N = entries[i], entries[j]
            for x, y in counting:
                report.instances += 1
                if not value(i, x, y) > value(j, x, y):
                    report.fail([M, N], [str(x), str(y)], 1, sign(value(i, x, y) - value(j, x, y)))
            if not M.loops:
                for x in AXIS_SAMPLES:
                    report.instances += 1
                    if value(i, x, 0) < value(j, x, 0):
                        report.fail([M, N], [str(x), "0"], 1, -1, "axis y=0, M loopless")
            if not M.coloops:
                for y in AXIS_SAMPLES:
                    report.instances += 1
                    if value(i, 0, y) < value(j, 0, y):
                        report.fail([M, N], ["0", str(y)], 1, -1, "axis x=0, M coloop-free")
    return report.finish(started)


def suite_lemma_loop_coloop(n_max: int = 6, grid=DEFAULT_GRID, universe: Optional[Universe] = None) -> VerificationReport:
    """``sgn(T(M) - x^r y^(n-r)) = sgn(x + y - xy)`` unless every element is a loop or coloop, where the difference vanishes."""
    universe = universe or Universe()
    started = time.perf_counter()
    report = VerificationReport("lemma-lc", n_max, [p.label() for p in grid])
    for n in range(2, n_max + 1):
        entries = universe.labeled(n) if n <= 6 else universe.reps(n)
        _check_axioms(report, entries)
        for M in entries:
            T = universe.tutte(M)
            base = TuttePoly.monomial(M.r, M.n - M.r)
            trivial = (M.loops | M.coloops) == M.ground
            report.instances += 1
            if trivial:
                if not T.same_polynomial(base):
                    report.fail([M], note="loops-and-coloops matroid with T != x^k y^m")
                continue
            for point in grid:
                report.instances += 1
                got = sign(T.evaluate(point.x, point.y) - point.x**M.r * point.y ** (M.n - M.r))
                if got != point.expected:
                    report.fail([M], point, point.expected, got)
    return report.finish(started)


def _grid_sign_law(report, Ma, Mb, Ta, Tb, grid, note):
    """``sgn(Ta - Tb) = sgn(x + y - xy)`` on the grid unless ``Ma`` and ``Mb`` are isomorphic (then ``Ta == Tb``)."""
    if is_isomorphic(Ma, Mb):
        report.instances += 1
        if not Ta.same_polynomial(Tb):
            report.fail([Ma, Mb], note=note + ": isomorphic but polynomials differ")
        return
    for point in grid:
        report.instances += 1
        got = sign(Ta.evaluate(point.x, point.y) - Tb.evaluate(point.x, point.y))
        if got != point.expected:
            report.fail([Ma, Mb], point, point.expected, got, note)


def _freedom_checks(args):
    M, grid = args
    report = VerificationReport("freedom", M.n)
    cache = MemoCache()
    _check_axioms(report, [M])
    n = M.n
    for f in range(n):
        for g in range(n):
            if f == g or not freer_than(M, f, g):
                continue
            g_loop = M.loops >> g & 1
            f_coloop = M.coloops >> f & 1
            tag = f"f={f}, g={g}"
            checks = [("b(f) >= b(g)", b_through(M, f) >= b_through(M, g))]
            if not g_loop:
                for k in range(M.r + 1):
                    checks.append((f"W_{k}(f) >= W_{k}(g)", flats_k_through(M, f, k) >= flats_k_through(M, g, k)))
                checks.append(("h(f) >= h(g)", h_through(M, f) >= h_through(M, g)))
            if not f_coloop:
                checks.append(("gamma(f) >= gamma(g)", circuits_through(M, f) >= circuits_through(M, g)))
                checks.append(
                    ("gamma'(f) >= gamma'(g)", spanning_circuits_through(M, f) >= spanning_circuits_through(M, g))
                )
            for what, ok in checks:
                report.instances += 1
                if not ok:
                    report.fail([M], note=f"{tag}: {what} fails")
            if not g_loop:
                Mf, _ = minor(M, contract=1 << f)
                Mg, _ = minor(M, contract=1 << g)
                _grid_sign_law(
                    report, Mf, Mg, tutte_delcon(Mf, cache), tutte_delcon(Mg, cache), grid, f"{tag}: contraction law"
                )
            if not f_coloop:
                Df, _ = minor(M, delete=1 << f)
                Dg, _ = minor(M, delete=1 << g)
                _grid_sign_law(
                    report, Dg, Df, tutte_delcon(Dg, cache), tutte_delcon(Df, cache), grid, f"{tag}: deletion law"
                )
    return report.instances, report.failures


def suite_freedom_corollaries(
    n_max: int = 6, grid=DEFAULT_GRID, universe: Optional[Universe] = None, jobs: int = 1
) -> VerificationReport:
    """Counting inequalities and contraction/deletion sign laws for every freer pair."""
    universe = universe or Universe()
    started = time.perf_counter()
    report = VerificationReport("freedom", n_max, [p.label() for p in grid])
    items = [(M, tuple(grid)) for n in range(n_max + 1) for M in universe.reps(n)]
    for instances, failures in _fan_out(_freedom_checks, items, jobs):
        report.merge(instances, failures)
    return report.finish(started)


def strip_parallel(M: Matroid, f: int, g: int):
    """Delete every element other than ``f`` parallel to ``g``; return the minor and the new indices of ``f``, ``g``."""
    X = parallel_to(M, g) & ~(1 << f)
    L, keep = minor(M, delete=X)
    return L, keep.index(f), keep.index(g)


def contract_series(M: Matroid, f: int, g: int):
    """Contract every element other than ``g`` in series with ``f``."""
    X = series_with(M, f) & ~(1 << g)
    N, keep = minor(M, contract=X)
    return N, keep.index(f), keep.index(g)


def _equality_checks(M: Matroid):
    report = VerificationReport("equality", M.n)
    _check_axioms(report, [M])
    n, r = M.n, M.r
    truncs = {i: iterated_truncation(M, i) for i in range(max(r - 1, 0))}
    for f in range(n):
        for g in range(n):
            if f == g or not freer_than(M, f, g):
                continue
            tag = f"f={f}, g={g}"
            clones = are_clones(M, f, g)

            def expect(what, equal, clone):
                report.instances += 1
                if equal != clone:
                    report.fail([M], expected=clone, actual=equal, note=f"{tag}: {what}")

            expect("b-equality vs clones", b_through(M, f) == b_through(M, g), clones)
            L, lf, lg = strip_parallel(M, f, g)
            expect("h-equality vs clones after parallel strip", h_through(M, f) == h_through(M, g), are_clones(L, lf, lg))
            N, nf, ng = contract_series(M, f, g)
            expect(
                "gamma-equality vs clones after series contraction",
                circuits_through(M, f) == circuits_through(M, g),
                are_clones(N, nf, ng),
            )
            for k in range(1, r):
                T = truncs[r - k - 1]
                S, sf, sg = strip_parallel(T, f, g)
                expect(
                    f"W_{k}-equality vs clones in stripped truncation",
                    flats_k_through(M, f, k) == flats_k_through(M, g, k),
                    are_clones(S, sf, sg),
                )
    return report.instances, report.failures


def suite_equality_characterizations(
    n_max: int = 6, universe: Optional[Universe] = None, jobs: int = 1
) -> VerificationReport:
    """Equal counts through ``f`` and ``g`` happen exactly when they are clones in the right minor."""
    universe = universe or Universe()
    started = time.perf_counter()
    report = VerificationReport("equality", n_max, [])
    items = [M for n in range(n_max + 1) for M in universe.reps(n)]
    for instances, failures in _fan_out(_equality_checks, items, jobs):
        report.merge(instances, failures)
    # Spanning-circuit counts can tie without f and g being clones.
    ex = counterexample_sec4()
    S, f, g = ex.matroid, ex.element("f"), ex.element("g")
    facts = {
        "rank 5": S.r == 5,
        "f freer than g": bool(freer_than(S, f, g)),
        "gamma'(f) = 0": spanning_circuits_through(S, f) == 0,
        "gamma'(g) = 0": spanning_circuits_through(S, g) == 0,
        "f, g not clones": not are_clones(S, f, g),
        "cosimple": is_cosimple(S),
    }
    for what, ok in facts.items():
        report.instances += 1
        if not ok:
            report.fail([S], note=f"rank-5 counterexample: {what} fails")
    return report.finish(started)


def _restriction_lemma(M: Matroid, f: int, g: int) -> bool:
    """``b(f; N) >= b(g; N)`` for every restriction ``N`` containing ``f`` and ``g``."""
    others = M.ground & ~(1 << f | 1 << g)
    for extra in bits.submasks(others):
        N, keep = minor(M, delete=others & ~extra)
        if b_through(N, keep.index(f)) < b_through(N, keep.index(g)):
            return False
    return True


def _structural_checks(M: Matroid):
    report = VerificationReport("structural", M.n)
    _check_axioms(report, [M])
    n = M.n
    cache = MemoCache()

    def expect(ok, note):
        report.instances += 1
        if not ok:
            report.fail([M], note=note)

    T = tutte_delcon(M, cache)
    for x in HYPERBOLA_XS:
        expect(hyperbola_check(M, x, T), f"hyperbola identity fails at x={x}")
    expect(tutte_delcon(dual(M), cache).same_polynomial(T.transpose()), "T(dual) != T transposed")
    for X in circuit_hyperplanes(M):
        R = relax(M, X)
        expect(find_exchange_violation(R.bases) is None, f"relaxing {bits.fmt(X)} gives a non-matroid")
        diff = tutte_delcon(R, cache) - T
        expect(
            diff.terms() == {(1, 0): 1, (0, 1): 1, (1, 1): -1},
            f"relaxing {bits.fmt(X)}: T difference is {diff.trimmed()}",
        )
    if M.r >= 1:
        expect(truncation(M) == truncation_via_free_extension(M), "truncation routes disagree")
    D = dual(M)
    for f in range(n):
        for g in range(n):
            if f == g:
                continue
            tag = f"f={f}, g={g}"
            fr = bool(freer_than(M, f, g))
            expect(fr == freer_than_circuits(M, f, g), f"{tag}: freer characterisations disagree")
            expect(fr == _restriction_lemma(M, f, g), f"{tag}: restriction lemma fails")
            if g > f:
                both = fr and bool(freer_than(M, g, f))
                expect(are_clones(M, f, g) == both, f"{tag}: clones vs mutual freedom")
            if not fr:
                continue
            expect(bool(freer_than(D, g, f)), f"{tag}: freedom does not reverse in the dual")
            if not M.loops >> g & 1:
                expect(phi_gf_check(M, f, g), f"{tag}: phi_gf is not a rank-preserving weak map")
            others = bits.to_indices(M.ground & ~(1 << f | 1 << g))
            for choice in _minor_choices(len(others)):
                X = bits.from_indices(e for e, c in zip(others, choice) if c == 1)
                Y = bits.from_indices(e for e, c in zip(others, choice) if c == 2)
                if not X and not Y:
                    continue
                m, keep = minor(M, delete=X, contract=Y)
                expect(
                    bool(freer_than(m, keep.index(f), keep.index(g))),
                    f"{tag}: freedom lost in minor delete={bits.fmt(X)} contract={bits.fmt(Y)}",
                )
    return report.instances, report.failures


def _minor_choices(k: int):
    """All assignments of ``k`` elements to keep (0), delete (1) or contract (2)."""
    from itertools import product

    return product((0, 1, 2), repeat=k)


def suite_structural_lemmas(
    n_max: int = 6, universe: Optional[Universe] = None, jobs: int = 1
) -> VerificationReport:
    """Per-matroid structural facts on representatives, plus the dual weak-map
    statement on every labeled weak pair."""
    universe = universe or Universe()
    started = time.perf_counter()
    report = VerificationReport("structural", n_max, [])
    items = [M for n in range(n_max + 1) for M in universe.reps(n)]
    for instances, failures in _fan_out(_structural_checks, items, jobs):
        report.merge(instances, failures)
    for n in range(min(n_max, 6) + 1):
        entries = universe.labeled(n)
        _check_axioms(report, entries)
        duals = [dual(M) for M in entries]
        for i, j in weak_pair_indices(entries):
            report.instances += 1
            if not identity_is_rp_weak_map(duals[i], duals[j]):
                report.fail([entries[i], entries[j]], note="identity weak map does not dualise")
    return report.finish(started)


SUITES = {
    "main": suite_main_theorem,
    "lucas": suite_lucas,
    "lemma-lc": suite_lemma_loop_coloop,
    "freedom": suite_freedom_corollaries,
    "equality": suite_equality_characterizations,
    "structural": suite_structural_lemmas,
}


def run_suite(name: str, n_max: int, grid=DEFAULT_GRID, universe: Optional[Universe] = None, jobs: int = 1):
    func = SUITES[name]
    kwargs = {"n_max": n_max, "universe": universe}
    if name in ("main", "lemma-lc", "freedom"):
        kwargs["grid"] = grid
    if name in ("freedom", "equality", "structural"):
        kwargs["jobs"] = jobs
    report = func(**kwargs)
    log.info(report.summary())
    return report
