"""Command-line entry point.

Exit codes: 0 success, 1 verification failure (reports are still written),
2 usage or input errors. Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import json
import logging
import os
import sys
from fractions import Fraction

import click

from . import bits
from .canonical import is_isomorphic
from .catalog import format_catalog, generate_representatives, labeled_catalog, save
from .constructions import counterexample_sec4, figure2_example
from .errors import MatroidError
from .fileformat import format_matroid, read_matroid
from .order import clone_pairs, find_rp_weak_map, freer_than, identity_is_rp_weak_map
from .tutte import MemoCache, tutte_delcon, tutte_subset_expansion
from .verify import DEFAULT_GRID, SUITES, Universe, parse_grid, parse_rational, run_suite

log = logging.getLogger("matro")


def _frac(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _fail(msg: str, code: int = 2):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _load(path):
    try:
        return read_matroid(path)
    except MatroidError as exc:
        _fail(f"{path}: {exc}")
    except OSError as exc:
        _fail(str(exc))


def _cache() -> MemoCache:
    return MemoCache(os.environ.get("MATRO_CACHE_DIR") or None)


def _grid(spec: str):
    if spec == "default":
        return DEFAULT_GRID
    try:
        with open(spec) as fh:
            return parse_grid(fh.read())
    except (OSError, ValueError, ZeroDivisionError) as exc:
        _fail(f"grid {spec}: {exc}")


class RationalType(click.ParamType):
    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return parse_rational(value)
        except (ValueError, ZeroDivisionError) as exc:
            self.fail(str(exc), param, ctx)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def main(verbose):
    """Matroid weak maps, Tutte polynomials and exhaustive verification."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(message)s", stream=sys.stderr)


@main.command()
@click.argument("file", type=click.Path(allow_dash=True))
def validate(file):
    """Check that FILE holds a valid matroid."""
    M = _load(file)
    click.echo(f"valid matroid: n={M.n} r={M.r} bases={len(M.bases)}")


@main.command()
@click.argument("file", type=click.Path(allow_dash=True))
@click.option("--at", "points", type=(RationalType(), RationalType()), multiple=True, metavar="X Y",
              help="Evaluate at (X, Y); repeatable.")
@click.option("--method", type=click.Choice(["delcon", "subset", "both"]), default="delcon", show_default=True)
def tutte(file, points, method):
    """Print the Tutte polynomial coefficient matrix (rows are powers of x)."""
    M = _load(file)
    if method == "subset":
        T = tutte_subset_expansion(M)
    else:
        T = tutte_delcon(M, _cache())
    if method == "both":
        other = tutte_subset_expansion(M)
        if other != T:
            click.echo("deletion-contraction and subset expansion disagree", err=True)
            sys.exit(1)
    click.echo(f"T = {T}")
    for row in T.coeffs:
        click.echo(" ".join(map(str, row)))
    for x, y in points:
        click.echo(f"T({_frac(x)}, {_frac(y)}) = {_frac(T.evaluate(x, y))}")


@main.command()
@click.argument("file1", type=click.Path(allow_dash=True))
@click.argument("file2", type=click.Path(allow_dash=True))
@click.option("--grid", "grid_spec", default="default", show_default=True, help="'default' or a grid file.")
def compare(file1, file2, grid_spec):
    """Compare T(M) and T(N) on a grid; check the weak-map sign law when it applies."""
    M, N = _load(file1), _load(file2)
    grid = _grid(grid_spec)
    T, U = tutte_delcon(M), tutte_delcon(N)
    weak = None
    if M.n == N.n:
        weak = find_rp_weak_map(M, N)
    identity = M.n == N.n and identity_is_rp_weak_map(M, N)
    click.echo(f"identity is a rank-preserving weak map: {'yes' if identity else 'no'}")
    click.echo(f"some rank-preserving weak map exists: {'yes' if weak else 'no'}")
    iso = is_isomorphic(M, N)
    click.echo(f"isomorphic: {'yes' if iso else 'no'}")
    bad = 0
    for p in grid:
        tm, tn = T.evaluate(p.x, p.y), U.evaluate(p.x, p.y)
        got = (tm > tn) - (tm < tn)
        line = f"{_frac(p.x)} {_frac(p.y)}  T(M)={_frac(tm)}  T(N)={_frac(tn)}  sign={got:+d}"
        if weak:
            want = 0 if iso else p.expected
            line += f"  expected={want:+d}"
            if got != want:
                line += "  VIOLATION"
                bad += 1
        click.echo(line)
    if bad:
        sys.exit(1)


@main.command()
@click.argument("file", type=click.Path(allow_dash=True))
@click.argument("f", type=int)
@click.argument("g", type=int)
def freer(file, f, g):
    """Is element F freer than element G?"""
    M = _load(file)
    try:
        res = freer_than(M, f, g)
    except (MatroidError, IndexError) as exc:
        _fail(str(exc))
    if res.freer:
        click.echo("freer")
    else:
        click.echo(f"not_freer witness {bits.fmt(res.witness)}")


@main.command()
@click.argument("file", type=click.Path(allow_dash=True))
def clones(file):
    """List clone pairs."""
    M = _load(file)
    for a, b in clone_pairs(M):
        click.echo(f"{a} {b}")


@main.command()
@click.argument("name", type=click.Choice(["figure2", "counterexample"]))
def examples(name):
    """Emit a named example in matroid format, with a JSON label map as a comment."""
    ex = figure2_example() if name == "figure2" else counterexample_sec4()
    labels = json.dumps({str(i): lab for i, lab in ex.labels.items()})
    click.echo(format_matroid(ex.matroid, comments=[f"labels: {labels}"]), nl=False)


@main.command()
@click.option("--n", "n", type=click.IntRange(0, 8), required=True)
@click.option("--mode", type=click.Choice(["labeled", "repr"]), default="repr", show_default=True)
@click.option("--method", type=click.Choice(["auto", "brute", "extension"]), default="auto", show_default=True)
@click.option("--out", type=click.Path(allow_dash=True), default="-", show_default=True)
def catalog(n, mode, method, out):
    """Generate all matroids on N elements (labeled) or one per isomorphism class (repr)."""
    try:
        if mode == "labeled":
            cat = labeled_catalog(n)
        else:
            cat = generate_representatives(n, method)
    except MatroidError as exc:
        _fail(str(exc))
    if out == "-":
        click.echo(format_catalog(cat), nl=False)
    else:
        save(cat, out)
        click.echo(f"wrote {len(cat)} matroids to {out}", err=True)


@main.command()
@click.option("--suite", type=click.Choice(["all", *SUITES]), default="all", show_default=True)
@click.option("--n", "n", type=click.IntRange(0, 8), default=6, show_default=True)
@click.option("--grid", "grid_spec", default="default", show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--report", "report_path", type=click.Path(), default=None, help="Write the JSON report here.")
@click.option("--jobs", type=click.IntRange(1), default=os.cpu_count() or 1, show_default="cpu count")
def verify(suite, n, grid_spec, seed, report_path, jobs):
    """Run verification suites and report failures."""
    grid = _grid(grid_spec)
    universe = Universe(cache=_cache(), seed=seed)
    names = list(SUITES) if suite == "all" else [suite]
    reports = []
    for name in names:
        rep = run_suite(name, n, grid, universe, jobs)
        click.echo(rep.summary(), err=True)
        reports.append(rep.to_dict())
    payload = reports[0] if len(reports) == 1 else {"suites": reports}
    text = json.dumps(payload, indent=2, sort_keys=True)
    if report_path:
        with open(report_path, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)
    if any(r["failures"] for r in reports):
        sys.exit(1)

