"""Matrix text format and structured reports.

File grammar::

    # optional comment lines (also allowed anywhere, and after data)
    <rows> <cols>
    <rows * cols whitespace-separated tokens>

A token is ``-inf`` or ``.`` for -inf, an optionally signed decimal
(``-1``, ``0.2``, ``.5``) or an optionally signed fraction (``1/15``).
Decimals are read as exact rationals.
"""

from __future__ import annotations

import re
import sys
from fractions import Fraction
from pathlib import Path

from .core import NEG_INF, TropMatrix, TropVector, decimal_string, format_scalar
from .errors import ParseError

_NUMBER = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)(/\d+)?\Z")
_BOTTOM_TOKENS = {"-inf", ".", "-Inf", "-INF"}


def parse_token(tok: str, line=None, column=None, source=None):
    if tok in _BOTTOM_TOKENS:
        return NEG_INF
    if not _NUMBER.match(tok):
        raise ParseError(f"bad entry {tok!r}", line, column, source)
    num, _, den = tok.partition("/")
    value = Fraction(num)
    if den:
        if int(den) == 0:
            raise ParseError(f"zero denominator in {tok!r}", line, column, source)
        value /= int(den)
    return value.numerator if value.denominator == 1 else value


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for m in re.finditer(r"\S+", body):
            yield m.group(0), lineno, m.start() + 1


def parse_matrix(text: str, source=None) -> TropMatrix:
    toks = list(_tokens(text))
    if len(toks) < 2:
        raise ParseError("missing '<rows> <cols>' header", 1, 1, source)
    dims = []
    for tok, line, col in toks[:2]:
        if not tok.isdigit() or int(tok) < 1:
            raise ParseError(f"bad dimension {tok!r}", line, col, source)
        dims.append(int(tok))
    rows, cols = dims
    body = toks[2:]
    if len(body) != rows * cols:
        line, col = (body[-1][1], body[-1][2]) if body else (toks[1][1], toks[1][2])
        raise ParseError(f"expected {rows * cols} entries, found {len(body)}", line, col, source)
    values = [parse_token(t, line, col, source) for t, line, col in body]
    return TropMatrix(values[r * cols:(r + 1) * cols] for r in range(rows))


def read_matrix(path) -> TropMatrix:
    """Read a matrix file; ``"-"`` reads standard input."""
    if str(path) == "-":
        return parse_matrix(sys.stdin.read(), "<stdin>")
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", source=str(p)) from exc
    return parse_matrix(text, str(p))


def serialize_matrix(a: TropMatrix, comment: str = None) -> str:
    lines = []
    if comment:
        lines.extend("# " + c for c in comment.splitlines())
    lines.append(f"{a.rows} {a.cols}")
    for row in a.entries:
        lines.append(" ".join(format_scalar(x) for x in row))
    return "\n".join(lines) + "\n"


def scalar_field(x):
    """Exact string for a scalar: ``"p/q"``, ``"p"`` or ``"-inf"``."""
    return format_scalar(x)


def scalar_with_decimal(x) -> dict:
    out = {"exact": format_scalar(x)}
    dec = decimal_string(x)
    if dec is not None and "." in dec:
        out["decimal"] = dec
    return out


def vector_field(v: TropVector):
    return [format_scalar(x) for x in v]


def render_text(report, indent: int = 0) -> str:
    """Human-readable rendering of a structured report."""
    pad = "  " * indent
    lines = []
    if isinstance(report, dict):
        for key, value in report.items():
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_inline(value)}")
    elif isinstance(report, list):
        for item in report:
            if isinstance(item, (dict, list)) and not _is_flat(item):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(pad + _inline(report))
    return "\n".join(lines)


def _is_flat(value) -> bool:
    if isinstance(value, dict):
        return all(not isinstance(v, dict) and (not isinstance(v, list) or _is_flat(v))
                   for v in value.values())
    return all(not isinstance(v, (dict, list)) or (isinstance(v, list) and _is_flat(v)) for v in value)


def _inline(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, dict):
        return ", ".join(f"{k}={_inline(v)}" for k, v in value.items())
    if isinstance(value, list):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    return str(value)
