"""Plain-text family and code files.

Family file::

    N n m [zm|gf]
    <N lines of n integers>        row i is the function h_i

Code file::

    q k N [linear]                 k generator rows follow
    q K N generic                  K codeword rows follow

A code header without the fourth token is read as a generator matrix.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .codes import Code, GenericCode, LinearCode
from .errors import MdsHashError, ParseError
from .family import GROUPS, HashFamily
from .field import field_create


def _rows(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if tokens:
            out.append((lineno, tokens))
    return out


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def _body(rows, count: int, width: int, header_line: int) -> np.ndarray:
    body = rows[1:]
    if len(body) < count:
        last = body[-1][0] if body else header_line
        raise ParseError(f"expected {count} data rows, found {len(body)} (file truncated?)", last)
    if len(body) > count:
        raise ParseError(f"unexpected extra data after {count} rows", body[count][0])
    data = []
    for lineno, tokens in body:
        vals = _ints(tokens, lineno)
        if len(vals) != width:
            raise ParseError(f"expected {width} entries, found {len(vals)}", lineno)
        data.append(vals)
    return np.array(data, dtype=np.int64)


def format_family(fam: HashFamily) -> str:
    head = f"{fam.N} {fam.n} {fam.m}" + (f" {fam.group}" if fam.group else "")
    lines = [head] + [" ".join(str(int(x)) for x in row) for row in fam.table]
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> HashFamily:
    rows = _rows(text)
    if not rows:
        raise ParseError("empty family file", 1)
    lineno, head = rows[0]
    if len(head) not in (3, 4):
        raise ParseError("header must be 'N n m [group]'", lineno)
    N, n, m = _ints(head[:3], lineno)
    group = head[3] if len(head) == 4 else "zm"
    if group not in GROUPS:
        raise ParseError(f"group must be one of {GROUPS}, got {group!r}", lineno)
    table = _body(rows, N, n, lineno)
    try:
        return HashFamily(table, m, group)
    except MdsHashError as exc:
        raise ParseError(str(exc), lineno) from None


def format_code(code: Code) -> str:
    if isinstance(code, LinearCode):
        head = f"{code.q} {code.dim} {code.length}"
        body = code.generator
    else:
        head = f"{code.q} {code.size} {code.length} generic"
        body = code.words
    lines = [head] + [" ".join(str(int(x)) for x in row) for row in body]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> Code:
    rows = _rows(text)
    if not rows:
        raise ParseError("empty code file", 1)
    lineno, head = rows[0]
    if len(head) not in (3, 4):
        raise ParseError("header must be 'q k N [linear|generic]'", lineno)
    q, k, N = _ints(head[:3], lineno)
    kind = head[3] if len(head) == 4 else "linear"
    if kind not in ("linear", "generic"):
        raise ParseError(f"code type must be 'linear' or 'generic', got {kind!r}", lineno)
    body = _body(rows, k, N, lineno)
    try:
        if kind == "linear":
            return LinearCode(field_create(q), body)
        return GenericCode(q, body)
    except MdsHashError as exc:
        raise ParseError(str(exc), lineno) from None


def read_family(path) -> HashFamily:
    return parse_family(Path(path).read_text())


def write_family(fam: HashFamily, path) -> None:
    Path(path).write_text(format_family(fam))


def read_code(path) -> Code:
    return parse_code(Path(path).read_text())


def write_code(code: Code, path) -> None:
    Path(path).write_text(format_code(code))
