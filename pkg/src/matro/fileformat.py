"""Plain-text matroid format.

::

    # optional comment lines
    n r
    0 1
    0 2

Line one holds ``n`` and ``r``; every following line is one basis written as
strictly increasing zero-based indices separated by single spaces, with the
basis lines in lexicographic order. A rank-0 matroid has the single basis
``{}``, written as one empty line. The text must end with a newline.
"""

from __future__ import annotations

from . import bits
from .core import Matroid, validate
from .errors import MatroidError, ParseError


def basis_line(B: int) -> str:
    return " ".join(map(str, bits.to_indices(B)))


def format_matroid(M: Matroid, comments=()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{M.n} {M.r}")
    out.extend(basis_line(B) for B in sorted(M.bases, key=bits.to_indices))
    return "\n".join(out) + "\n"


def _parse_header(text: str, lineno: int) -> tuple[int, int]:
    parts = text.split(" ")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(lineno, f"expected 'n r', got {text!r}")
    n, r = int(parts[0]), int(parts[1])
    if not 0 <= r <= n <= bits.MAX_ELEMENTS:
        raise ParseError(lineno, f"need 0 <= r <= n <= {bits.MAX_ELEMENTS}")
    return n, r


def _parse_basis(text: str, lineno: int, n: int) -> tuple[int, ...]:
    if text == "":
        return ()
    parts = text.split(" ")
    if not all(p.isdigit() and (p == "0" or not p.startswith("0")) for p in parts):
        raise ParseError(lineno, f"malformed basis line {text!r}")
    idx = tuple(int(p) for p in parts)
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ParseError(lineno, "indices must be strictly increasing")
    if idx[-1] >= n:
        raise ParseError(lineno, f"index {idx[-1]} outside ground set of size {n}")
    return idx


def parse_block(lines: list[str], pos: int, *, check=True, first_lineno=1) -> tuple[Matroid, int]:
    """Parse one matroid starting at ``lines[pos]``; return it and the next unread position.

    For ``r > 0`` the block ends at the first blank line or end of input; for
    ``r == 0`` it is the header plus exactly one empty basis line.
    """
    while pos < len(lines) and lines[pos].startswith("#"):
        pos += 1
    if pos >= len(lines):
        raise ParseError(first_lineno + pos, "missing header line")
    n, r = _parse_header(lines[pos], first_lineno + pos)
    pos += 1
    rows = []
    if r == 0:
        if pos >= len(lines) or lines[pos] != "":
            raise ParseError(first_lineno + pos, "rank-0 matroid needs one empty basis line")
        rows.append(())
        pos += 1
    else:
        while pos < len(lines) and lines[pos] != "":
            if not lines[pos].startswith("#"):
                rows.append(_parse_basis(lines[pos], first_lineno + pos, n))
            pos += 1
    if not rows:
        raise ParseError(first_lineno + pos, "no bases listed")
    if any(b <= a for a, b in zip(rows, rows[1:])):
        raise ParseError(first_lineno + pos, "basis lines must be sorted and distinct")
    masks = [bits.from_indices(row) for row in rows]
    if not check:
        return Matroid(n, r, masks), pos
    try:
        M = validate(n, r, masks)
    except MatroidError as exc:
        raise ParseError(first_lineno + pos, f"{type(exc).__name__}: {exc}") from exc
    return M, pos


def parse_matroid(text: str, *, check=True) -> Matroid:
    if not text.endswith("\n"):
        raise ParseError(text.count("\n") + 1, "missing final newline")
    lines = text[:-1].split("\n")
    M, pos = parse_block(lines, 0, check=check)
    if any(line and not line.startswith("#") for line in lines[pos:]):
        raise ParseError(pos + 1, "trailing content after matroid")
    return M


def read_matroid(path, *, check=True) -> Matroid:
    import sys

    if str(path) == "-":
        return parse_matroid(sys.stdin.read(), check=check)
    with open(path) as fh:
        return parse_matroid(fh.read(), check=check)
