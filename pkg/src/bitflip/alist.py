"""Alist text format for parity-check matrices.

Layout (indices 1-based, lists zero-padded to the maximum weight)::

    N M
    cmax rmax
    <N column weights>
    <M row weights>
    <N lines: row indices of each column>
    <M lines: column indices of each row>
"""

from __future__ import annotations

from pathlib import Path

from .errors import AlistFormatError
from .gf2 import BinaryMatrix, indices_from_mask


def write_alist(H: BinaryMatrix) -> str:
    cols = H.columns()
    col_lists = [[j + 1 for j in indices_from_mask(c)] for c in cols]
    row_lists = [[i + 1 for i in indices_from_mask(r)] for r in H.bits]
    cmax = max((len(x) for x in col_lists), default=0)
    rmax = max((len(x) for x in row_lists), default=0)

    def pad(xs: list[int], width: int) -> str:
        return " ".join(str(x) for x in xs + [0] * (width - len(xs)))

    lines = [
        f"{H.ncols} {H.nrows}",
        f"{cmax} {rmax}",
        " ".join(str(len(x)) for x in col_lists),
        " ".join(str(len(x)) for x in row_lists),
    ]
    lines += [pad(x, cmax) for x in col_lists]
    lines += [pad(x, rmax) for x in row_lists]
    return "\n".join(lines) + "\n"


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise AlistFormatError(f"non-integer token in {line.strip()!r}", lineno) from None


def _index_list(tokens: list[int], weight: int, width: int, bound: int, what: str, lineno: int) -> list[int]:
    if len(tokens) not in (weight, width):
        raise AlistFormatError(f"{what}: expected {weight} or {width} entries, got {len(tokens)}", lineno)
    idx, padding = tokens[:weight], tokens[weight:]
    if any(padding):
        raise AlistFormatError(f"{what}: nonzero entry in padding (weight header says {weight})", lineno)
    if any(x == 0 for x in idx):
        raise AlistFormatError(f"{what}: weight header says {weight} but list has padding inside", lineno)
    for x in idx:
        if not 1 <= x <= bound:
            raise AlistFormatError(f"{what}: index {x} out of range 1..{bound}", lineno)
    if len(set(idx)) != len(idx):
        raise AlistFormatError(f"{what}: repeated index", lineno)
    return [x - 1 for x in idx]


def parse_alist(text: str) -> BinaryMatrix:
    lines = text.splitlines()

    def line(k: int) -> list[int]:
        if k >= len(lines):
            raise AlistFormatError(f"file truncated, expected at least {k + 1} lines", k + 1)
        return _ints(lines[k], k + 1)

    header = line(0)
    if len(header) != 2 or min(header) < 1:
        raise AlistFormatError("expected 'N M' with N, M >= 1", 1)
    n, m = header
    maxes = line(1)
    if len(maxes) != 2:
        raise AlistFormatError("expected 'cmax rmax'", 2)
    cmax, rmax = maxes
    col_w, row_w = line(2), line(3)
    if len(col_w) != n:
        raise AlistFormatError(f"expected {n} column weights, got {len(col_w)}", 3)
    if len(row_w) != m:
        raise AlistFormatError(f"expected {m} row weights, got {len(row_w)}", 4)
    if max(col_w) != cmax or min(col_w) < 0:
        raise AlistFormatError(f"column weights do not match cmax = {cmax}", 3)
    if max(row_w) != rmax or min(row_w) < 0:
        raise AlistFormatError(f"row weights do not match rmax = {rmax}", 4)

    rows = [0] * m
    for i in range(n):
        k = 4 + i
        for j in _index_list(line(k), col_w[i], cmax, m, f"column {i + 1}", k + 1):
            rows[j] |= 1 << i
    for j in range(m):
        k = 4 + n + j
        listed = _index_list(line(k), row_w[j], rmax, n, f"row {j + 1}", k + 1)
        if sum(1 << i for i in listed) != rows[j]:
            raise AlistFormatError(f"row {j + 1} disagrees with the column lists", k + 1)
    extra = [s for s in lines[4 + n + m :] if s.strip()]
    if extra:
        raise AlistFormatError("unexpected content after the row lists", 5 + n + m)
    return BinaryMatrix(m, n, tuple(rows))


def read_alist(path: str | Path) -> BinaryMatrix:
    return parse_alist(Path(path).read_text())


def save_alist(H: BinaryMatrix, path: str | Path) -> None:
    Path(path).write_text(write_alist(H))
