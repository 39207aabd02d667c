"""Integral homology of finite groups from the normalized bar complex.

Degree ``j`` is free on ``j``-tuples of non-identity elements, with boundary

    d(g1, ..., gj) = (g2, ..., gj) + sum_{0<i<j} (-1)^i (.., g_i g_{i+1}, ..) + (-1)^j (g1, ..., g_{j-1})

and faces that produce an identity entry dropped.  Homology is read off
Smith normal forms of the boundary matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import config
from .errors import BudgetExceeded, CapExceeded, OverflowDetected, ShapeMismatch, ValidationError
from .groups import FinGroup

__all__ = ["ChainComplexZ", "AbelianInvariants", "SmithForm", "bar_complex", "smith_normal_form",
           "integral_homology"]

# switch to Python integers well before int64 products could wrap
_WIDE = 1 << 31


@dataclass(frozen=True)
class AbelianInvariants:
    divisors: tuple[int, ...]
    free_rank: int

    def __post_init__(self):
        ds = self.divisors
        if any(d <= 1 for d in ds) or any(b % a for a, b in zip(ds, ds[1:])):
            raise ValidationError(f"divisors {ds} do not form a divisibility chain")
        if self.free_rank < 0:
            raise ValidationError("negative free rank")

    def is_trivial(self) -> bool:
        return not self.divisors and self.free_rank == 0

    def to_dict(self) -> dict:
        return {"divisors": list(self.divisors), "free_rank": self.free_rank}


@dataclass(frozen=True, eq=False)
class ChainComplexZ:
    """``boundaries[k]`` is the matrix of ``d_k: C_k -> C_(k-1)`` (``boundaries[0]`` maps to zero)."""

    ranks: tuple[int, ...]
    boundaries: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.ranks) != len(self.boundaries):
            raise ShapeMismatch("one boundary matrix per degree")
        for k, d in enumerate(self.boundaries):
            rows = self.ranks[k - 1] if k else 0
            if d.shape != (rows, self.ranks[k]):
                raise ShapeMismatch(f"d_{k} has shape {d.shape}, expected {(rows, self.ranks[k])}")

    def check_square_zero(self) -> bool:
        for k in range(2, len(self.boundaries)):
            a, b = self.boundaries[k - 1], self.boundaries[k]
            if a.size and b.size and (a @ b).any():
                return False
        return True


def _tuple_count(q: int, j: int) -> int:
    return q ** j


def bar_complex(G: FinGroup, top_degree: int) -> ChainComplexZ:
    """Normalized bar complex in degrees ``0..top_degree``."""
    if top_degree < 0:
        raise ShapeMismatch("negative degree")
    q = G.order - 1
    if _tuple_count(q, top_degree) > config.HOMOLOGY_RANK_BUDGET:
        raise BudgetExceeded(f"degree {top_degree} chains of a group of order {G.order} exceed the rank budget "
                             f"{config.HOMOLOGY_RANK_BUDGET}")
    nonid = np.array([g for g in range(G.order) if g != G.identity], dtype=np.int64)
    code = np.full(G.order, -1, dtype=np.int64)  # element -> position among non-identity elements
    code[nonid] = np.arange(q)
    ranks = [_tuple_count(q, j) for j in range(top_degree + 1)]
    boundaries = [np.zeros((0, 1), dtype=np.int64)]
    for j in range(1, top_degree + 1):
        d = np.zeros((ranks[j - 1], ranks[j]), dtype=np.int64)
        if q and j >= 2:
            # digits[:, t] is the t-th entry, most significant first
            idx = np.arange(ranks[j])
            digits = np.stack([(idx // q ** (j - 1 - t)) % q for t in range(j)], axis=1)
            elems = nonid[digits]
            weights = q ** np.arange(j - 2, -1, -1)

            def add(face_codes: np.ndarray, keep: np.ndarray, sign: int) -> None:
                rows = (face_codes[keep] * weights).sum(axis=1)
                np.add.at(d, (rows, idx[keep]), sign)

            everything = np.ones(ranks[j], dtype=bool)
            add(digits[:, 1:], everything, 1)
            for i in range(1, j):
                prod = G.table[elems[:, i - 1], elems[:, i]]
                keep = prod != G.identity
                merged = np.concatenate([digits[:, :i - 1], code[prod][:, None], digits[:, i + 1:]], axis=1)
                add(merged, keep, -1 if i % 2 else 1)
            add(digits[:, :-1], everything, -1 if j % 2 else 1)
        # d_1 vanishes with trivial coefficients: g . () - () = 0
        boundaries.append(d)
    cx = ChainComplexZ(tuple(ranks), tuple(boundaries))
    if not cx.check_square_zero():
        raise ValidationError("bar complex boundaries do not square to zero")
    return cx


@dataclass(frozen=True)
class SmithForm:
    divisors: tuple[int, ...]  # nonzero diagonal entries, each dividing the next
    rank: int


def _normalize_diagonal(diag: list[int]) -> list[int]:
    d = [abs(x) for x in diag if x]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] // g * d[j]
    return sorted(d)


def smith_normal_form(M, fixed_width: bool = False) -> SmithForm:
    """Elementary divisors of an integer matrix.

    Pivots are chosen with the smallest nonzero absolute value; entries move
    to Python integers when they grow past 2^31, unless ``fixed_width`` is
    set, in which case :class:`OverflowDetected` is raised instead.
    """
    A = np.array(M, dtype=object if not fixed_width and _too_wide(M) else np.int64)
    if A.ndim != 2:
        raise ShapeMismatch("expected a matrix")
    if A.dtype != object and A.size and np.abs(A).max() >= _WIDE:
        if fixed_width:
            raise OverflowDetected("matrix entries exceed the fixed-width range")
        A = A.astype(object)
    rows, cols = A.shape
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        sub = A[t:, t:]
        nz = np.argwhere(sub != 0)
        if not len(nz):
            break
        mags = np.abs(sub[nz[:, 0], nz[:, 1]])
        r, c = nz[int(np.argmin(mags))]
        r, c = r + t, c + t
        A[[t, r]] = A[[r, t]]
        A[:, [t, c]] = A[:, [c, t]]
        while True:
            p = A[t, t]
            col = A[t + 1:, t]
            if col.any():
                quo = col // p
                A[t + 1:] -= np.outer(quo, A[t]).astype(A.dtype)
            row = A[t, t + 1:]
            if row.any():
                quo = row // p
                A[:, t + 1:] -= np.outer(A[:, t], quo).astype(A.dtype)
            if A.dtype != object and A.size and np.abs(A).max() >= _WIDE:
                if fixed_width:
                    raise OverflowDetected("entry growth exceeded the fixed-width range")
                A = A.astype(object)
            rest_col = np.nonzero(A[t + 1:, t])[0]
            rest_row = np.nonzero(A[t, t + 1:])[0]
            if not len(rest_col) and not len(rest_row):
                break
            # a remainder is smaller than the pivot: move it into place
            if len(rest_col):
                k = t + 1 + rest_col[int(np.argmin(np.abs(A[t + 1 + rest_col, t])))]
                A[[t, k]] = A[[k, t]]
            else:
                k = t + 1 + rest_row[int(np.argmin(np.abs(A[t, t + 1 + rest_row])))]
                A[:, [t, k]] = A[:, [k, t]]
        diag.append(int(A[t, t]))
        t += 1
    divisors = _normalize_diagonal(diag)
    return SmithForm(tuple(divisors), len(divisors))


def _too_wide(M) -> bool:
    try:
        arr = np.asarray(M)
        return arr.dtype == object or (arr.size > 0 and int(np.abs(arr).max()) >= _WIDE)
    except OverflowError:
        return True


def integral_homology(G: FinGroup, n: int) -> AbelianInvariants:
    """``H_n(G; Z)`` for ``n`` up to the degree cap."""
    if n < 0:
        raise ShapeMismatch("negative degree")
    if n > config.HOMOLOGY_DEGREE_CAP:
        raise CapExceeded(f"homology is computed up to degree {config.HOMOLOGY_DEGREE_CAP}")
    cx = bar_complex(G, n + 1)
    rank_in = smith_normal_form(cx.boundaries[n]).rank if n else 0
    outgoing = smith_normal_form(cx.boundaries[n + 1])
    torsion = tuple(d for d in outgoing.divisors if d > 1)
    free = cx.ranks[n] - rank_in - outgoing.rank
    return AbelianInvariants(torsion, free)
