"""
Brute-force checks that work on the expanded design rather than on ``G``.

Unconfoundedness is tested through partitions of the design's cells.  The
contrasts of an effect word ``w`` are spanned by the indicators of the
classes ``{cell : w . cell = u}`` (centred), those of rows and columns by the
row and column indicators.  Two such contrast spaces are orthogonal exactly
when the partitions have proportional frequencies:
``|A_i & B_j| * N == |A_i| * |B_j|`` for every pair of classes.  This is the
uncorrelated-estimator condition for the equal-sized classes produced by
coset designs.

The module also hosts a tiny exhaustive search over generator matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Union

import numpy as np

from .agm import DEFAULT_CELL_CAP, ArrayGeneratorMatrix, RowColumnDesign, expand
from .confounding import count_unconfounded, effect_words, phi_bound, word_matrix
from .errors import CellCapExceeded, SearchSpaceTooLarge
from .gf import FieldMatrix, array_rank, check_modulus

ROW = "row"
COLUMN = "column"
Source = Union[str, tuple]  # "row", "column" or a word tuple

DEFAULT_SEARCH_CAP = 2**24


@dataclass(frozen=True)
class EffectPartition:
    source: Source
    labels: np.ndarray  # class label per cell, row-major order
    n_classes: int

    @property
    def classes(self) -> list[np.ndarray]:
        return [np.flatnonzero(self.labels == c) for c in range(self.n_classes)]

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.n_classes)


def partition_of(design: RowColumnDesign, source: Source) -> EffectPartition:
    rows, cols = design.shape
    if source == ROW:
        return EffectPartition(source, np.repeat(np.arange(rows), cols), rows)
    if source == COLUMN:
        return EffectPartition(source, np.tile(np.arange(cols), rows), cols)
    w = np.asarray(source, dtype=np.int64)
    return EffectPartition(tuple(source), design.flat() @ w % design.s, design.s)


def orthogonal(a: EffectPartition, b: EffectPartition) -> bool:
    """Proportional-frequency test on the contingency table of two partitions."""
    if a.labels.shape != b.labels.shape:
        raise ValueError("partitions belong to different designs")
    total = a.labels.size
    table = np.bincount(a.labels * b.n_classes + b.labels, minlength=a.n_classes * b.n_classes)
    table = table.reshape(a.n_classes, b.n_classes)
    return bool(np.array_equal(table * total, np.outer(a.sizes, b.sizes)))


@dataclass(frozen=True)
class OracleStatus:
    label: str
    factors: tuple[int, ...]
    degenerate: bool  # single class: the effect is aliased with the mean
    row: bool
    column: bool
    aliased_with: tuple[str, ...]

    @property
    def unconfounded(self) -> bool:
        return not (self.degenerate or self.row or self.column or self.aliased_with)


def oracle_classify(design: RowColumnDesign, cell_cap: int = DEFAULT_CELL_CAP) -> dict[tuple, OracleStatus]:
    """Per-effect status from partition orthogonality, keyed by effect word.

    An effect is unconfounded iff its partition is non-degenerate and
    orthogonal to the row partition, the column partition and the partition
    of every other main effect and 2fi component.
    """
    if design.flat().shape[0] > cell_cap:
        raise CellCapExceeded(design.flat().shape[0], cell_cap)
    listing = effect_words(design.n, design.s)
    parts = [partition_of(design, w) for w, _, _ in listing]
    row_part, col_part = partition_of(design, ROW), partition_of(design, COLUMN)
    degenerate = [len(np.unique(pt.labels)) < 2 for pt in parts]

    aliased: list[list[str]] = [[] for _ in listing]
    for i, j in combinations(range(len(listing)), 2):
        if degenerate[i] or degenerate[j]:
            continue
        if not orthogonal(parts[i], parts[j]):
            aliased[i].append(listing[j][1])
            aliased[j].append(listing[i][1])

    out = {}
    for idx, (w, label, factors) in enumerate(listing):
        deg = degenerate[idx]
        out[w] = OracleStatus(
            label,
            factors,
            deg,
            deg or not orthogonal(parts[idx], row_part),
            deg or not orthogonal(parts[idx], col_part),
            tuple(aliased[idx]),
        )
    return out


def oracle_unconfounded_2fi(statuses: dict[tuple, OracleStatus]) -> list[tuple[int, int]]:
    pairs: dict[tuple[int, int], bool] = {}
    for st in statuses.values():
        if len(st.factors) == 2:
            pairs[st.factors] = pairs.get(st.factors, True) and st.unconfounded
    return [pr for pr, ok in pairs.items() if ok]


def oracle_for(agm: ArrayGeneratorMatrix, cell_cap: int = DEFAULT_CELL_CAP) -> dict[tuple, OracleStatus]:
    return oracle_classify(expand(agm, cell_cap), cell_cap)


# -- exhaustive search -----------------------------------------------------


def rref_bases(r: int, n: int, s: int):
    """Every ``r x n`` matrix in reduced row echelon form with rank ``r``.

    These are in bijection with the ``r``-dimensional subspaces of GF(s)^n.
    """
    for pivots in combinations(range(n), r):
        pivot_set = set(pivots)
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivot_set]
        for values in product(range(s), repeat=len(free)):
            m = np.zeros((r, n), dtype=np.int64)
            for i, pc in enumerate(pivots):
                m[i, pc] = 1
            for (i, j), v in zip(free, values):
                m[i, j] = v
            yield m


@dataclass(frozen=True)
class SearchResult:
    s: int
    p: int
    q: int
    n: int
    max_t: int | None  # None: no candidate keeps every main effect unconfounded
    witness: ArrayGeneratorMatrix | None
    phi: int
    candidates: int

    @property
    def feasible(self) -> bool:
        return self.max_t is not None


def exhaustive_optimum(s: int, p: int, q: int, n: int, cap: int = DEFAULT_SEARCH_CAP) -> SearchResult:
    """Largest unconfounded-2fi count over all designs with clean main effects.

    Candidates are pairs of subspaces (span of the column-key rows, span of the
    row-key rows) given by their reduced echelon bases, which is all the
    confounding structure depends on.  Pairs that are not jointly of full rank
    are skipped.
    """
    s = check_modulus(s)
    if p < 1 or q < 1 or p + q > n:
        raise ValueError("need 1 <= p, 1 <= q and p + q <= n")
    raw = s ** ((p + q) * n)
    if raw > cap:
        raise SearchSpaceTooLarge(f"{s}^{(p + q) * n} = {raw} raw matrices exceeds the cap of {cap}")

    words = word_matrix(w for w, _, _ in effect_words(n, s))
    gr_list = list(rref_bases(q, n, s))
    best_t, best_g, count = None, None, 0
    for gc in rref_bases(p, n, s):
        for gr in gr_list:
            g = np.vstack([gc, gr])
            if array_rank(g, s) != p + q:
                continue
            count += 1
            clean, t = count_unconfounded(g, s, p, words, n)
            if clean and (best_t is None or t > best_t):
                best_t, best_g = t, g
    witness = None
    if best_g is not None:
        witness = ArrayGeneratorMatrix(s, p, q, FieldMatrix(best_g, s))
    return SearchResult(s, p, q, n, best_t, witness, phi_bound(s, p, q, n), count)
