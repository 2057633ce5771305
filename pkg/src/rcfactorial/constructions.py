"""
Generator matrices for 2fi-optimal row-column designs.

Two families are covered for every prime ``s`` and every ``p <= q``:

* full factorials, ``n = p + q`` (odd ``s`` only);
* one-step fractions, ``n = p + q + 1``.

Each family is split into branches by ``s`` and ``p`` (and ``q`` for
``p = 2``); every branch assembles a fixed block matrix.  Some branches leave
a block of free columns whose only requirement is that the first ``p`` rows
spread evenly over the points of PG(p-1, s); those are filled by
:func:`select_star_columns`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .agm import ArrayGeneratorMatrix, validate_agm
from .errors import BalanceInfeasible, Inadmissible, UnsupportedParameters
from .geometry import enumerate_points, point_histogram
from .gf import FieldMatrix, check_modulus


class Kind(str, Enum):
    FULL = "full"
    FRAC1 = "frac1"


@dataclass(frozen=True)
class ConstructionRequest:
    s: int
    p: int
    q: int
    kind: Kind = Kind.FULL

    @property
    def n(self) -> int:
        return self.p + self.q + (1 if self.kind == Kind.FRAC1 else 0)


# -- helper blocks ---------------------------------------------------------


def identity(v: int) -> np.ndarray:
    return np.eye(v, dtype=np.int64)


def ones(v: int, w: int | None = None) -> np.ndarray:
    return np.ones((v, v if w is None else w), dtype=np.int64)


def zeros(v: int, w: int) -> np.ndarray:
    return np.zeros((v, w), dtype=np.int64)


def ones_col(v: int) -> np.ndarray:
    return np.ones((v, 1), dtype=np.int64)


def unit_col(i: int, v: int) -> np.ndarray:
    """Column vector of length ``v`` with a 1 in (1-based) position ``i``."""
    e = np.zeros((v, 1), dtype=np.int64)
    e[i - 1, 0] = 1
    return e


def antidiagonal(v: int) -> np.ndarray:
    return np.fliplr(identity(v))


def upper_ones(v: int) -> np.ndarray:
    return np.triu(ones(v))


def lower_block(p: int, s: int = 2) -> np.ndarray:
    """``I + K (I + J)`` over GF(s), with ``K`` the upper-triangular ones matrix."""
    return (identity(p) + upper_ones(p) @ (identity(p) + ones(p))) % s


def helper_blocks(p: int, s: int) -> dict[str, FieldMatrix]:
    if p < 1:
        raise ValueError("p must be at least 1")
    blocks = {
        "I": identity(p),
        "J": ones(p),
        "H": antidiagonal(p),
        "K": upper_ones(p),
        "L": lower_block(p, s),
        "1": ones_col(p),
    }
    blocks.update({f"e{i}": unit_col(i, p) for i in range(1, p + 1)})
    return {name: FieldMatrix(b, s) for name, b in blocks.items()}


def lemma_columns(p: int) -> np.ndarray:
    """The ``p x (2p+1)`` binary matrix ``(K | L | K1 + 1)`` whose columns are distinct and nonzero."""
    k = upper_ones(p)
    return np.hstack([k, lower_block(p, 2), (k @ ones_col(p) + ones_col(p)) % 2])


# -- balanced free columns -------------------------------------------------


def select_star_columns(fixed: FieldMatrix, extra: int) -> FieldMatrix | None:
    """Choose ``extra`` nonzero columns so that ``(fixed | chosen)`` is balanced over PG(p-1, s).

    Greedy: repeatedly append the lexicographically smallest point among
    those currently used the fewest times.  Returns ``None`` when ``extra``
    is 0 (after checking ``fixed`` is already balanced).

    Raises:
        BalanceInfeasible: the final histogram is not confined to
            ``{alpha, alpha + 1}`` with ``alpha = floor(n (s-1) / (s^p - 1))``.
    """
    s, p = fixed.s, fixed.rows
    hist = point_histogram(fixed)
    points = enumerate_points(p, s)
    chosen = []
    for _ in range(extra):
        low = min(hist.values())
        pt = next(pt for pt in points if hist[pt] == low)
        chosen.append(pt)
        hist[pt] += 1
    n = fixed.cols + extra
    alpha = n * (s - 1) // (s**p - 1)
    if any(c not in (alpha, alpha + 1) for c in hist.values()):
        raise BalanceInfeasible(
            f"cannot balance {n} columns over PG({p - 1},{s}) at alpha={alpha}", histogram=hist
        )
    if not chosen:
        return None
    return FieldMatrix(np.array(chosen, dtype=np.int64).T, s)


def _star(top_fixed: list[np.ndarray], extra: int, s: int) -> np.ndarray:
    fixed = FieldMatrix(np.hstack(top_fixed), s)
    chosen = select_star_columns(fixed, extra)
    return zeros(fixed.rows, 0) if chosen is None else chosen.data


# -- branch builders -------------------------------------------------------

_M = np.array([[1, 1], [2, 1]], dtype=np.int64)
_M_BIG = np.array([[1, 1], [3, 2]], dtype=np.int64)
_E = np.array([[1, 0], [0, 1], [1, 1]], dtype=np.int64)
_F = np.array([[1, 0, 1], [1, 1, 0]], dtype=np.int64)


def _full_p1(s, q):
    top = np.hstack([[[1]], ones(1, q)])
    bottom = np.hstack([ones_col(q), identity(q) + ones(q)])
    return np.vstack([top, bottom])


def _full_p2(s, q):
    star = _star([identity(2), _M], q - 2, s)
    top = np.hstack([identity(2), _M, star])
    mid = np.hstack([identity(2), _M + identity(2), zeros(2, q - 2)])
    low = np.hstack([zeros(q - 2, 4), identity(q - 2)])
    return np.vstack([top, mid, low])


def _full_p3(s, p, q):
    jh = ones(p) + antidiagonal(p)
    star = _star([identity(p), jh], q - p, s)
    top = np.hstack([identity(p), jh, star])
    mid = np.hstack([antidiagonal(p), ones(p) + 2 * identity(p), zeros(p, q - p)])
    low = np.hstack([zeros(q - p, 2 * p), identity(q - p)])
    return np.vstack([top, mid, low])


def _frac2_p1(s, q):
    top = np.hstack([[[1]], ones(1, q), [[1]]])
    bottom = np.hstack([ones_col(q), identity(q) + ones(q), unit_col(q, q)])
    return np.vstack([top, bottom])


def _frac2_p2(s, q):
    ef = _E @ _F % 2
    if q == 2:
        return np.array([[1, 1, 0, 1, 1], [0, 1, 1, 1, 1], [1, 1, 1, 0, 1], [1, 0, 1, 1, 1]])
    if q == 3:
        top = np.hstack([identity(2), _F, ones_col(2)])
        bottom = np.hstack([_E, identity(3) + ef, unit_col(3, 3)])
        return np.vstack([top, bottom])
    if q == 4:
        top = np.hstack([identity(2), _F, ones_col(2), unit_col(1, 2)])
        mid = np.hstack([_E, identity(3) + ef, unit_col(1, 3), zeros(3, 1)])
        low = np.hstack([zeros(1, 5), [[1, 1]]])
        return np.vstack([top, mid, low])
    star = _star([identity(2), _F, ones_col(2)], q - 3, s)
    top = np.hstack([identity(2), _F, ones_col(2), star])
    mid = np.hstack([_E, identity(3) + ef, ones_col(3), zeros(3, q - 3)])
    low = np.hstack([zeros(q - 3, 5), ones_col(q - 3), identity(q - 3)])
    return np.vstack([top, mid, low])


def _frac2_p3(s, p, q):
    k = upper_ones(p)
    star = _star([identity(p), identity(p) + ones(p), ones_col(p)], q - p, s)
    top = np.hstack([identity(p), identity(p) + ones(p), ones_col(p), star])
    mid = np.hstack([k, lower_block(p, 2), k @ ones_col(p) + ones_col(p), zeros(p, q - p)])
    low = np.hstack([zeros(q - p, 2 * p + 1), identity(q - p)])
    return np.vstack([top, mid, low])


def _fracodd_p1(s, q):
    top = np.hstack([[[1]], ones(1, q), [[2]]])
    bottom = np.hstack([ones_col(q), identity(q) + ones(q), ones_col(q)])
    return np.vstack([top, bottom])


# vectors keyed by q for the odd-level p = 2 fractions; entries may be negative
_P2_VECTORS = {
    3: {"a": lambda s: (1, s - 2), "b": lambda s: (1, s - 1)},
    4: {"a": lambda s: (1, s - 1), "b": lambda s: (1, s - 2), "c": lambda s: (1, s - 3)},
    5: {"a": lambda s: (1, s - 1)},
}


def _col(v) -> np.ndarray:
    return np.array(v, dtype=np.int64).reshape(-1, 1)


def _fracodd_p2(s, q):
    i2 = identity(2)
    if q == 2:
        if s == 3:
            m, a, b = _M, _col((1, 2)), _col((2, 0))
        else:
            m, a, b = _M_BIG, _col((1, 1)), _col((2, 2))
        return np.vstack([np.hstack([i2, m, a]), np.hstack([i2, m + i2, b])])
    vec = {name: _col(f(s)) for name, f in _P2_VECTORS[min(q, 5)].items()}
    if q == 3:
        top = np.hstack([i2, _M, vec["a"], vec["b"]])
        mid = np.hstack([i2, _M + i2, unit_col(1, 2), zeros(2, 1)])
        low = np.array([[0, 0, 0, 0, 1, 1]])
        return np.vstack([top, mid, low])
    if q == 4:
        top = np.hstack([i2, _M, vec["a"], vec["b"], vec["c"]])
        mid = np.hstack([i2, _M + i2, unit_col(2, 2), zeros(2, 2)])
        low = np.hstack([zeros(2, 4), ones_col(2), _col((1, 2)), unit_col(2, 2)])
        return np.vstack([top, mid, low])
    a = vec["a"]
    star = _star([i2, _M, a], q - 2, s)
    top = np.hstack([i2, _M, a, star])
    mid = np.hstack([i2, _M + i2, a, zeros(2, q - 2)])
    low = np.hstack([zeros(q - 2, 4), ones_col(q - 2), identity(q - 2)])
    return np.vstack([top, mid, low])


def _fracodd_p3(s, p, q):
    a = ones_col(p)
    b = 2 * a + unit_col(1, p) - unit_col(p, p)
    jh = ones(p) + antidiagonal(p)
    star = _star([identity(p), jh, a], q - p, s)
    top = np.hstack([identity(p), jh, a, star])
    mid = np.hstack([antidiagonal(p), ones(p) + 2 * identity(p), b, zeros(p, q - p)])
    low = np.hstack([zeros(q - p, 2 * p + 1), identity(q - p)])
    return np.vstack([top, mid, low])


def branch_name(req: ConstructionRequest) -> str:
    """Name of the construction branch serving ``req``, or raise if none applies."""
    s, p, q = req.s, req.p, req.q
    if p < 1 or q < 1:
        raise UnsupportedParameters("p and q must be positive")
    if p > q:
        raise UnsupportedParameters(
            f"p={p} > q={q}: constructions assume p <= q; request the transpose instead"
        )
    if req.kind == Kind.FULL:
        if s == 2:
            raise Inadmissible(
                "full factorial constructions are given for odd prime levels only (s=2 requested)"
            )
        return "full-p1" if p == 1 else "full-p2" if p == 2 else "full-p3"
    if s == 2:
        if p == 1:
            if q <= 2:
                raise Inadmissible(
                    "two-level fraction with p=1 and q<=2: "
                    "there is at least one confounded main effect"
                )
            return "frac2-p1"
        if p == 2:
            return f"frac2-p2-q{min(q, 5)}" + ("+" if q >= 5 else "")
        return "frac2-p3"
    if p == 1:
        if q == 1:
            raise Inadmissible(
                "odd-level fraction with p=q=1: there exists at least one confounded main effect"
            )
        return "fracodd-p1"
    if p == 2:
        if q == 2:
            return "fracodd-p2-q2-s3" if s == 3 else "fracodd-p2-q2"
        return f"fracodd-p2-q{min(q, 5)}" + ("+" if q >= 5 else "")
    return "fracodd-p3"


def construct(req: ConstructionRequest) -> ArrayGeneratorMatrix:
    s = check_modulus(req.s)
    p, q = req.p, req.q
    branch = branch_name(req)
    family = branch.split("-")[0]
    if family == "full":
        g = _full_p1(s, q) if p == 1 else _full_p2(s, q) if p == 2 else _full_p3(s, p, q)
    elif family == "frac2":
        g = _frac2_p1(s, q) if p == 1 else _frac2_p2(s, q) if p == 2 else _frac2_p3(s, p, q)
    else:
        g = _fracodd_p1(s, q) if p == 1 else _fracodd_p2(s, q) if p == 2 else _fracodd_p3(s, p, q)
    g = np.asarray(g, dtype=np.int64) % s
    assert g.shape == (p + q, req.n), (branch, g.shape)
    return validate_agm(s, p, q, g, branch=branch)


def build(s: int, p: int, q: int, kind: Kind | str = Kind.FULL) -> ArrayGeneratorMatrix:
    return construct(ConstructionRequest(s, p, q, Kind(kind)))


# free (starred) column positions per branch, as (start, stop) offsets; used
# to compare constructions against published matrices block by block
def star_columns(agm: ArrayGeneratorMatrix) -> list[int]:
    p, q, branch = agm.p, agm.q, agm.branch or ""
    if branch == "full-p2":
        return list(range(4, 4 + q - 2))
    if branch == "full-p3":
        return list(range(2 * p, 2 * p + q - p))
    if branch == "frac2-p2-q5+":
        return list(range(6, 6 + q - 3))
    if branch == "frac2-p3" or branch == "fracodd-p3":
        return list(range(2 * p + 1, 2 * p + 1 + q - p))
    if branch == "fracodd-p2-q5+":
        return list(range(5, 5 + q - 2))
    return []
