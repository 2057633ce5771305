"""
Array generator matrices and the row-column designs they generate.

An array generator matrix ``G`` is a full-row-rank ``(p+q) x n`` matrix over
GF(s).  Its first ``p`` rows (``gc``) span the key block of the design's
columns and its last ``q`` rows (``gr``) span the key block of its rows.  The
unit in row ``i`` and column ``j`` receives ``x_i + y_j`` where ``x_i`` runs
over the span of ``gc`` and ``y_j`` over the span of ``gr``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .errors import BadShape, CellCapExceeded, RankDeficient
from .geometry import canonicalize
from .gf import FieldMatrix, check_modulus, nullspace_basis, rank

DEFAULT_CELL_CAP = 3**9

Word = tuple  # canonical coefficient tuple, first nonzero entry 1

_ROMAN = ["", "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X"]


@dataclass(frozen=True)
class ArrayGeneratorMatrix:
    s: int
    p: int
    q: int
    g: FieldMatrix
    branch: str | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return self.g.cols

    @property
    def k(self) -> int:
        return self.n - self.p - self.q

    @property
    def gc(self) -> FieldMatrix:
        return self.g.row_block(0, self.p)

    @property
    def gr(self) -> FieldMatrix:
        return self.g.row_block(self.p, self.p + self.q)

    def transposed(self) -> ArrayGeneratorMatrix:
        """The same design with rows and columns exchanged."""
        data = np.vstack([self.g.data[self.p:], self.g.data[: self.p]])
        return ArrayGeneratorMatrix(self.s, self.q, self.p, FieldMatrix(data, self.s), self.branch)


@dataclass(frozen=True)
class RowColumnDesign:
    s: int
    p: int
    q: int
    n: int
    cells: np.ndarray  # shape (s**p, s**q, n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.cells.shape[0], self.cells.shape[1]

    def cell(self, i: int, j: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.cells[i, j])

    def flat(self) -> np.ndarray:
        """Cells in row-major order as an ``(N, n)`` array."""
        return self.cells.reshape(-1, self.n)


def validate_agm(s: int, p: int, q: int, raw, branch: str | None = None) -> ArrayGeneratorMatrix:
    s = check_modulus(s)
    g = FieldMatrix(raw.data if isinstance(raw, FieldMatrix) else raw, s)
    if p < 1 or q < 1:
        raise BadShape(f"p and q must be positive, got p={p}, q={q}")
    if g.rows != p + q:
        raise BadShape(f"expected {p + q} rows (p+q), got {g.rows}")
    if p + q > g.cols:
        raise BadShape(f"p+q={p + q} exceeds n={g.cols}; replicated designs are not supported")
    r = rank(g)
    if r != p + q:
        raise RankDeficient(r, p + q)
    return ArrayGeneratorMatrix(s, p, q, g, branch)


def combinations_of_rows(m: FieldMatrix) -> np.ndarray:
    """All ``s**rows`` combinations of the rows of ``m``.

    Combination ``c`` uses the base-``s`` digits of ``c`` as coefficients, most
    significant digit on the first row, so combination 0 is the zero vector.
    """
    s, r = m.s, m.rows
    idx = np.arange(s**r, dtype=np.int64)
    powers = s ** np.arange(r - 1, -1, -1, dtype=np.int64)
    digits = (idx[:, None] // powers[None, :]) % s
    return digits @ m.data % s


def expand(agm: ArrayGeneratorMatrix, cell_cap: int = DEFAULT_CELL_CAP) -> RowColumnDesign:
    cells = agm.s ** (agm.p + agm.q)
    if cells > cell_cap:
        raise CellCapExceeded(cells, cell_cap)
    x = combinations_of_rows(agm.gc)  # one per design row
    y = combinations_of_rows(agm.gr)  # one per design column
    grid = (x[:, None, :] + y[None, :, :]) % agm.s
    grid.setflags(write=False)
    return RowColumnDesign(agm.s, agm.p, agm.q, agm.n, grid)


def defining_subgroup(agm: ArrayGeneratorMatrix) -> list[Word]:
    """Canonical defining words of the fraction, sorted lexicographically."""
    basis = nullspace_basis(agm.g)
    if not basis:
        return []
    s = agm.s
    b = np.array(basis, dtype=np.int64)
    words = set()
    for coeffs in product(range(s), repeat=len(basis)):
        if any(coeffs):
            words.add(canonicalize(np.array(coeffs) @ b % s, s))
    return sorted(words)


def resolution(agm: ArrayGeneratorMatrix) -> int | None:
    """Length of the shortest defining word; ``None`` (unbounded) for a full factorial."""
    words = defining_subgroup(agm)
    if not words:
        return None
    return min(sum(1 for c in w if c) for w in words)


def roman(r: int | None) -> str:
    if r is None:
        return "unbounded"
    return _ROMAN[r] if r < len(_ROMAN) else str(r)


def factor_name(i: int, n: int) -> str:
    return chr(ord("A") + i) if n <= 26 else f"F{i + 1}"


def word_to_label(w: Sequence[int]) -> str:
    """Render a word as factor letters with exponents, e.g. ``BCDEF2``.

    Exponent 1 is omitted.  With more than 26 factors positional names
    ``F1 ... Fn`` are used and exponents are written ``^v``.
    """
    n = len(w)
    parts = []
    for i, c in enumerate(w):
        if not c:
            continue
        name = factor_name(i, n)
        if c == 1:
            parts.append(name)
        else:
            parts.append(f"{name}{c}" if n <= 26 else f"{name}^{c}")
    return "".join(parts) if parts else "I"


def interaction_label(l: int, m: int, n: int) -> str:
    return f"{factor_name(l, n)}x{factor_name(m, n)}"


def main_effect_word(l: int, n: int) -> Word:
    w = [0] * n
    w[l] = 1
    return tuple(w)


def component_word(l: int, m: int, v: int, n: int) -> Word:
    """Word of the interaction component with coefficient 1 on ``l`` and ``v`` on ``m``."""
    w = [0] * n
    w[l] = 1
    w[m] = v
    return tuple(w)
