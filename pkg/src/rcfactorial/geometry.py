"""Points of the projective geometry PG(m-1, s).

A point is represented by its canonical coordinate tuple: the unique
nonzero multiple whose first nonzero entry is 1.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

import numpy as np

from .errors import InvalidPoint
from .gf import FieldMatrix, check_modulus, inverse_mod

PGPoint = tuple  # canonical coordinate tuple


def canonicalize(v: Sequence[int], s: int) -> PGPoint:
    coords = [int(x) % s for x in v]
    for x in coords:
        if x:
            inv = inverse_mod(x, s)
            return tuple(c * inv % s for c in coords)
    raise InvalidPoint()


def is_canonical(v: Sequence[int], s: int) -> bool:
    for x in v:
        if x % s:
            return x % s == 1
    return False


def num_points(m: int, s: int) -> int:
    return (s**m - 1) // (s - 1)


def enumerate_points(m: int, s: int) -> list[PGPoint]:
    """All canonical points of PG(m-1, s) in lexicographic order."""
    if m < 1:
        raise ValueError("dimension must be at least 1")
    check_modulus(s)
    # product() yields tuples lexicographically already
    return [v for v in product(range(s), repeat=m) if is_canonical(v, s)]


def canonical_columns(a: np.ndarray, s: int) -> np.ndarray:
    """Vectorised canonicalisation of the columns of ``a``; zero columns stay zero."""
    a = np.asarray(a, dtype=np.int64) % s
    nonzero = a != 0
    lead_row = np.argmax(nonzero, axis=0)
    lead = a[lead_row, np.arange(a.shape[1])]
    inv = np.zeros(s, dtype=np.int64)
    for x in range(1, s):
        inv[x] = inverse_mod(x, s)
    return a * inv[lead] % s


def point_histogram(m: FieldMatrix) -> dict[PGPoint, int]:
    """Number of columns of ``m`` on each point of PG(rows-1, s).

    The map covers every point of the geometry, so unused points map to 0.
    """
    hist = {pt: 0 for pt in enumerate_points(m.rows, m.s)}
    for j, col in enumerate(m.columns()):
        if not any(col):
            raise InvalidPoint("zero column has no projective point", column=j)
        hist[canonicalize(col, m.s)] += 1
    return hist
