"""Exact linear algebra over prime fields F_p.

Subspaces are stored in reduced row echelon form, so two subspaces are
equal exactly when their basis matrices are equal.
"""

from __future__ import annotations

from functools import total_ordering
from typing import Iterable, Sequence

import numpy as np

SUPPORTED_PRIMES = (2, 3, 5, 7)


def inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    return inv


def rref(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    A = np.array(mat, dtype=np.int64) % p
    if A.ndim == 1:
        A = A.reshape(1, -1)
    rows, cols = A.shape
    inv = inverse_table(p)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * inv[A[r, c]]) % p
        col = A[:, c].copy()
        col[r] = 0
        if col.any():
            A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(mat, p: int) -> int:
    if len(mat) == 0:
        return 0
    return len(rref(mat, p)[1])


def nullspace(mat, p: int) -> np.ndarray:
    """Basis (as rows) of {x : mat @ x = 0 mod p}."""
    A = np.array(mat, dtype=np.int64) % p
    n = A.shape[1]
    R, piv = rref(A, p) if A.shape[0] else (np.zeros((0, n), dtype=np.int64), [])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = np.zeros(n, dtype=np.int64)
        x[f] = 1
        for i, c in enumerate(piv):
            x[c] = (-R[i, f]) % p
        basis.append(x)
    return np.array(basis, dtype=np.int64).reshape(len(basis), n)


@total_ordering
class Subspace:
    """A subspace of F_p^n with a canonical RREF basis."""

    __slots__ = ("p", "n", "rows", "pivots", "_key")

    def __init__(self, rows, n: int, p: int, *, canonical: bool = False):
        self.p = p
        self.n = n
        if canonical:
            R = np.asarray(rows, dtype=np.int64).reshape(len(rows), n)
            piv = [int(np.nonzero(r)[0][0]) for r in R]
        elif len(rows) == 0:
            R, piv = np.zeros((0, n), dtype=np.int64), []
        else:
            R, piv = rref(np.asarray(rows).reshape(-1, n), p)
        R.setflags(write=False)
        self.rows = R
        self.pivots = tuple(piv)
        self._key = (len(piv), tuple(map(tuple, R.tolist())))

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], n: int, p: int) -> "Subspace":
        vecs = [list(v) for v in vectors]
        return cls(np.array(vecs, dtype=np.int64).reshape(len(vecs), n), n, p)

    @classmethod
    def zero(cls, n: int, p: int) -> "Subspace":
        return cls([], n, p)

    @classmethod
    def full(cls, n: int, p: int) -> "Subspace":
        return cls(np.eye(n, dtype=np.int64), n, p, canonical=True)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def basis(self) -> list[np.ndarray]:
        return [r.copy() for r in self.rows]

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        w = v.copy()
        for r, c in zip(self.rows, self.pivots):
            if w[c]:
                w = (w - w[c] * r) % self.p
        return not w.any()

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._compatible(other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace(np.vstack([self.rows, other.rows]), self.n, self.p)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: rows [u|u] and [w|0]; left-zero rows give U & W."""
        self._compatible(other)
        n, p = self.n, self.p
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(n, p)
        top = np.hstack([self.rows, self.rows])
        bot = np.hstack([other.rows, np.zeros_like(other.rows)])
        R, _ = rref(np.vstack([top, bot]), p)
        inter = [r[n:] for r in R if not r[:n].any()]
        return Subspace(np.array(inter, dtype=np.int64).reshape(len(inter), n), n, p)

    __and__ = intersect

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def issubset(self, other: "Subspace") -> bool:
        return self <= other

    def _compatible(self, other: "Subspace") -> None:
        if (self.n, self.p) != (other.n, other.p):
            raise ValueError("subspaces live in different ambient spaces")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.n, self.p) == (other.n, other.p) and self._key == other._key

    def __lt__(self, other: "Subspace") -> bool:
        return self._key < other._key

    def __hash__(self) -> int:
        return hash((self.n, self.p, self._key))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, n={self.n}, p={self.p})"

    @property
    def sort_key(self) -> tuple:
        """(dimension, lexicographic RREF)."""
        return self._key


def batched_rref_keys(vectors: np.ndarray, p: int) -> np.ndarray:
    """Canonical forms of many spans at once.

    vectors has shape (B, K, n): B families of K vectors in F_p^n. Returns a
    (B, n, n) array whose row c is the RREF row with pivot in column c, or
    zero when column c carries no pivot. Two families span the same
    subspace iff their outputs are equal.
    """
    A = np.array(vectors, dtype=np.int64) % p
    B, K, n = A.shape
    inv = inverse_table(p)
    used = np.zeros((B, K), dtype=bool)
    pivot_row = np.full((B, n), -1, dtype=np.int64)
    bidx = np.arange(B)
    for c in range(n):
        cand = (A[:, :, c] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        r = np.argmax(cand, axis=1)
        b = bidx[has]
        r = r[has]
        prow = A[b, r, :]
        prow = (prow * inv[prow[:, c]][:, None]) % p
        A[b, r, :] = prow
        factors = A[b, :, c].copy()
        factors[np.arange(len(b)), r] = 0
        A[b] = (A[b] - factors[:, :, None] * prow[:, None, :]) % p
        used[b, r] = True
        pivot_row[b, c] = r
    out = np.zeros((B, n, n), dtype=np.int64)
    have = pivot_row >= 0
    bb, cc = np.nonzero(have)
    out[bb, cc, :] = A[bb, pivot_row[bb, cc], :]
    return out


def subspace_from_key(key: np.ndarray, p: int) -> Subspace:
    rows = key[key.any(axis=1)]
    return Subspace(rows, key.shape[1], p, canonical=True)


def all_vectors(n: int, p: int, *, projective: bool = False) -> np.ndarray:
    """Every vector of F_p^n (lexicographic), optionally one per line.

    With projective=True only nonzero vectors whose first nonzero entry is 1
    are returned.
    """
    if n == 0:
        return np.zeros((1 if not projective else 0, 0), dtype=np.int64)
    grid = np.indices((p,) * n).reshape(n, -1).T.astype(np.int64)
    if projective:
        nz = grid != 0
        keep = nz.any(axis=1)
        grid = grid[keep]
        first = grid[np.arange(len(grid)), np.argmax(grid != 0, axis=1)]
        grid = grid[first == 1]
    return grid
