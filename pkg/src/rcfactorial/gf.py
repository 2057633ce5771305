"""
Exact arithmetic and dense linear algebra over GF(s), s prime.

Matrices are stored as read-only ``int64`` numpy arrays of least nonnegative
residues.  Every operation reduces eagerly, so results are exact and
deterministic.  Moduli are limited to 16 bits, which keeps every product of
two residues (and every dot product of modest length) inside 64 bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import BadShape, NotPrime

MAX_MODULUS = 1 << 16


def is_prime(s: int) -> bool:
    if s < 2:
        return False
    d = 2
    while d * d <= s:
        if s % d == 0:
            return False
        d += 1
    return True


def check_modulus(s: int) -> int:
    s = int(s)
    if not is_prime(s):
        raise NotPrime(f"{s} is not a prime")
    if s >= MAX_MODULUS:
        raise NotPrime(f"modulus {s} does not fit in 16 bits")
    return s


def inverse_mod(a: int, s: int) -> int:
    """Multiplicative inverse of ``a`` modulo ``s`` by the extended Euclidean algorithm."""
    a %= s
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    r0, r1 = s, a
    t0, t1 = 0, 1
    while r1:
        quot = r0 // r1
        r0, r1 = r1, r0 - quot * r1
        t0, t1 = t1, t0 - quot * t1
    return t0 % s


def inverse_table(s: int) -> np.ndarray:
    """``table[a]`` is the inverse of ``a`` mod ``s``; ``table[0]`` is 0."""
    table = np.zeros(s, dtype=np.int64)
    for a in range(1, s):
        table[a] = inverse_mod(a, s)
    return table


@dataclass(frozen=True)
class FieldScalar:
    value: int
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldScalar):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldScalar(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldScalar(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return FieldScalar(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return FieldScalar(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldScalar(-self.value, self.modulus)

    def inverse(self) -> FieldScalar:
        return FieldScalar(inverse_mod(self.value, self.modulus), self.modulus)

    def __truediv__(self, other):
        return self * FieldScalar(self._coerce(other), self.modulus).inverse()

    def __int__(self):
        return self.value


class FieldMatrix:
    """Immutable dense matrix over GF(s)."""

    __slots__ = ("_data", "s")

    def __init__(self, entries, s: int):
        self.s = check_modulus(s)
        data = np.array(entries, dtype=np.int64)
        if data.ndim == 1:
            data = data.reshape(1, -1)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise BadShape(f"matrix must be 2-D and non-empty, got shape {data.shape}")
        data %= self.s
        data.setflags(write=False)
        self._data = data

    @classmethod
    def _wrap(cls, data: np.ndarray, s: int) -> FieldMatrix:
        # trusted path: data already reduced and 2-D
        obj = cls.__new__(cls)
        obj.s = s
        data = np.ascontiguousarray(data, dtype=np.int64)
        data.setflags(write=False)
        obj._data = data
        return obj

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def T(self) -> FieldMatrix:
        return FieldMatrix._wrap(self._data.T, self.s)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self._data[:, j])

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def row_block(self, start: int, stop: int) -> FieldMatrix:
        return FieldMatrix._wrap(self._data[start:stop], self.s)

    def select_columns(self, idx: Sequence[int]) -> FieldMatrix:
        return FieldMatrix._wrap(self._data[:, list(idx)], self.s)

    def tolist(self) -> list[list[int]]:
        return self._data.tolist()

    def __matmul__(self, other):
        if isinstance(other, FieldMatrix):
            if other.s != self.s:
                raise ValueError("mixed moduli")
            return FieldMatrix._wrap(self._data @ other._data % self.s, self.s)
        return np.asarray(self._data @ np.asarray(other, dtype=np.int64) % self.s)

    def __add__(self, other: FieldMatrix) -> FieldMatrix:
        return FieldMatrix._wrap((self._data + other._data) % self.s, self.s)

    def __sub__(self, other: FieldMatrix) -> FieldMatrix:
        return FieldMatrix._wrap((self._data - other._data) % self.s, self.s)

    def scale(self, c: int) -> FieldMatrix:
        return FieldMatrix._wrap(self._data * int(c) % self.s, self.s)

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.s == other.s and np.array_equal(self._data, other._data)

    def __hash__(self):
        return hash((self.s, self.shape, self._data.tobytes()))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self._data.tolist())
        return f"FieldMatrix(GF({self.s}), {self.rows}x{self.cols}: {body})"


def hstack(blocks: Iterable[FieldMatrix]) -> FieldMatrix:
    blocks = [b for b in blocks if b is not None]
    return FieldMatrix._wrap(np.hstack([b.data for b in blocks]), blocks[0].s)


def vstack(blocks: Iterable[FieldMatrix]) -> FieldMatrix:
    blocks = [b for b in blocks if b is not None]
    return FieldMatrix._wrap(np.vstack([b.data for b in blocks]), blocks[0].s)


def _rref_array(a: np.ndarray, s: int) -> tuple[np.ndarray, list[int]]:
    r = a.copy() % s
    nrows, ncols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        found = row + int(nz[0])
        if found != row:
            r[[row, found]] = r[[found, row]]
        r[row] = r[row] * inverse_mod(int(r[row, col]), s) % s
        others = r[:, col].copy()
        others[row] = 0
        r = (r - np.outer(others, r[row])) % s
        pivots.append(col)
        row += 1
    return r, pivots


def rref(m: FieldMatrix) -> tuple[FieldMatrix, int, list[int]]:
    """Reduced row echelon form over GF(s).

    Returns:
        (echelon, rank, pivot_cols) where ``echelon`` has the same shape as
        ``m`` with zero rows last and ``pivot_cols`` is strictly increasing.
    """
    r, pivots = _rref_array(m.data, m.s)
    return FieldMatrix._wrap(r, m.s), len(pivots), pivots


def rank(m: FieldMatrix) -> int:
    return len(_rref_array(m.data, m.s)[1])


def array_rank(a: np.ndarray, s: int) -> int:
    if a.size == 0:
        return 0
    return len(_rref_array(np.asarray(a, dtype=np.int64), s)[1])


def nullspace_basis(m: FieldMatrix) -> list[tuple[int, ...]]:
    """Basis of the right kernel ``{v : m v = 0}``, one vector per free column.

    Each vector is scaled so its first nonzero entry is 1.
    """
    r, pivots = _rref_array(m.data, m.s)
    s = m.s
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(m.cols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -r[i, f] % s
        lead = v[np.nonzero(v)[0][0]]
        v = v * inverse_mod(int(lead), s) % s
        basis.append(tuple(int(x) for x in v))
    return basis


def columns_independent(m: FieldMatrix, subset: Sequence[int]) -> bool:
    """True iff the selected columns are linearly independent (empty subset: True)."""
    subset = list(subset)
    for j in subset:
        if not 0 <= j < m.cols:
            raise IndexError(f"column index {j} out of range for {m.cols} columns")
    if len(set(subset)) != len(subset):
        raise ValueError("column indices must be distinct")
    if not subset:
        return True
    if len(subset) > m.rows:
        return False
    return array_rank(m.data[:, subset], m.s) == len(subset)


def max_independent_check(m: FieldMatrix, t: int) -> bool:
    """True iff every ``t`` columns of ``m`` are linearly independent.

    Subsets are visited in lexicographic order and the scan stops at the first
    dependent one.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    if t > m.cols:
        raise ValueError(f"t={t} exceeds the {m.cols} available columns")
    if t > m.rows:
        return False
    return all(columns_independent(m, c) for c in combinations(range(m.cols), t))


def first_dependent_subset(m: FieldMatrix, t: int) -> tuple[int, ...] | None:
    for c in combinations(range(m.cols), t):
        if not columns_independent(m, c):
            return c
    return None
