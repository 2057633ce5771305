"""Text formats: generator-matrix files and design exports.

Generator-matrix file::

    # optional comment lines
    s p q n
    <p+q lines of n space-separated residues>
"""

from __future__ import annotations

import csv
import io

from . import __version__
from .agm import ArrayGeneratorMatrix, RowColumnDesign, validate_agm
from .errors import AGMParseError


def _ints(tokens: list[str], lineno: int, starts: list[int]) -> list[int]:
    out = []
    for tok, col in zip(tokens, starts):
        try:
            out.append(int(tok))
        except ValueError:
            raise AGMParseError(f"expected an integer, got {tok!r}", lineno, col) from None
    return out


def _split(line: str) -> tuple[list[str], list[int]]:
    tokens, starts = [], []
    col = 0
    for part in line.split(" "):
        if part.strip():
            tokens.append(part.strip())
            starts.append(col + 1 + (len(part) - len(part.lstrip())))
        col += len(part) + 1
    return tokens, starts


def parse_agm(text: str) -> ArrayGeneratorMatrix:
    """Parse a generator-matrix file; faults are reported with line and column."""
    lines = [
        (i + 1, ln.replace("\t", " ").rstrip())
        for i, ln in enumerate(text.splitlines())
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise AGMParseError("empty file: expected header 's p q n'", 1)
    lineno, header = lines[0]
    tokens, starts = _split(header)
    if len(tokens) != 4:
        raise AGMParseError(f"header must be 's p q n', got {len(tokens)} fields", lineno)
    s, p, q, n = _ints(tokens, lineno, starts)
    if s < 2 or p < 1 or q < 1 or n < 1:
        raise AGMParseError("header values out of range (need s >= 2, p, q, n >= 1)", lineno)
    body = lines[1:]
    if len(body) != p + q:
        where = body[p + q][0] if len(body) > p + q else (body[-1][0] if body else lineno) + 1
        raise AGMParseError(f"expected {p + q} matrix rows, found {len(body)}", where)
    rows = []
    for lineno, line in body:
        tokens, starts = _split(line)
        if len(tokens) != n:
            raise AGMParseError(f"expected {n} entries, found {len(tokens)}", lineno)
        values = _ints(tokens, lineno, starts)
        for v, col in zip(values, starts):
            if not 0 <= v < s:
                raise AGMParseError(f"entry {v} is not a residue mod {s}", lineno, col)
        rows.append(values)
    return validate_agm(s, p, q, rows)


def format_agm(agm: ArrayGeneratorMatrix) -> str:
    lines = [f"{agm.s} {agm.p} {agm.q} {agm.n}"]
    lines += [" ".join(str(x) for x in row) for row in agm.g.tolist()]
    return "\n".join(lines) + "\n"


def cell_text(cell, s: int) -> str:
    if s <= 9:
        return "".join(str(int(x)) for x in cell)
    return ",".join(str(int(x)) for x in cell)


def design_to_csv(design: RowColumnDesign) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rows, cols = design.shape
    for i in range(rows):
        writer.writerow([cell_text(design.cells[i, j], design.s) for j in range(cols)])
    return buf.getvalue()


def design_to_json(design: RowColumnDesign) -> dict:
    return {
        "version": __version__,
        "s": design.s,
        "p": design.p,
        "q": design.q,
        "n": design.n,
        "k": design.n - design.p - design.q,
        "cells": design.cells.tolist(),
    }
