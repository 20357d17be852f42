"""Two-sided ideals of a skew ring and the lattice-level property checkers.

A two-sided ideal is represented as a ``Subspace`` of the monomial
coordinate space that is closed under left and right multiplication by
every monomial. Invariant ideals of R are represented by support sets.

The brute-force enumerator rests on one fact: every ideal is the sum of
the principal ideals of its elements. Since the ring is unital, the
principal ideal of v is span{m v m' : m, m' monomials}.
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded
from .fnalgebra import (
    ideal_from_open,
    invariant_ideals,
    is_G_prime,
    is_G_simple,
    support_of_ideal,
)
from .linalg import Subspace, all_vectors, batched_rref_keys, nullspace, subspace_from_key
from .skew import SkewElement, SkewRing, quotient_skew_ring

TwoSidedIdeal = Subspace

DEFAULT_CAPS = {2: 14, 3: 9, 5: 6, 7: 6}
_CHUNK = 2048


def dimension_cap(p: int, override: int | None = None) -> int:
    """Largest ring dimension for full enumeration; SGA_MAX_DIM wins over defaults."""
    if override is not None:
        return override
    env = os.environ.get("SGA_MAX_DIM")
    if env:
        return int(env)
    return DEFAULT_CAPS[p]


def _vec(S: SkewRing, x) -> np.ndarray:
    return x.to_vector() if isinstance(x, SkewElement) else np.asarray(x, dtype=np.int64) % S.p


def is_two_sided(S: SkewRing, V: Subspace) -> bool:
    for row in V.rows:
        for M in (S.left_mats, S.right_mats):
            imgs = (M @ row) % S.p
            if not all(V.contains(v) for v in imgs):
                return False
    return True


def ideal_generated_by(S: SkewRing, gens: Iterable) -> Subspace:
    """Close span(gens) under one-sided monomial multiplication until stable."""
    n, p = S.dim, S.p
    V = Subspace.span([_vec(S, g) for g in gens], n, p)
    while True:
        if V.dim == 0:
            return V
        imgs = [V.rows]
        for M in (S.left_mats, S.right_mats):
            imgs.append(np.einsum("kij,rj->kri", M, V.rows).reshape(-1, n) % p)
        W = Subspace(np.vstack(imgs), n, p)
        if W.dim == V.dim:
            return W
        V = W


def zero_ideal(S: SkewRing) -> Subspace:
    return Subspace.zero(S.dim, S.p)


def whole_ring(S: SkewRing) -> Subspace:
    return Subspace.full(S.dim, S.p)


def _sandwich_mats(S: SkewRing) -> np.ndarray:
    """Distinct nonzero matrices v -> m_a v m_b."""
    n = S.dim
    L, R = S.left_mats, S.right_mats
    M = np.einsum("aij,bjk->abik", L, R).reshape(-1, n, n)
    M = M[M.reshape(len(M), -1).any(axis=1)]
    return np.unique(M, axis=0)


def _principal_keys(S: SkewRing, vectors: np.ndarray, mats: np.ndarray) -> np.ndarray:
    imgs = np.einsum("kij,bj->bki", mats, vectors) % S.p
    return batched_rref_keys(imgs, S.p)


def principal_ideal(S: SkewRing, v) -> Subspace:
    v = _vec(S, v)
    if not v.any():
        return zero_ideal(S)
    key = _principal_keys(S, v[None, :], _sandwich_mats(S))[0]
    return subspace_from_key(key, S.p)


def _unique_keys(keys: np.ndarray) -> np.ndarray:
    flat = keys.reshape(len(keys), -1)
    return np.unique(flat, axis=0).reshape(-1, *keys.shape[1:])


def _join_irreducible(keys: np.ndarray, p: int) -> np.ndarray:
    """Drop principal ideals that are sums of smaller principal ideals.

    Processing by dimension, it suffices to test against the generators
    kept so far: every dropped ideal is itself a sum of kept ones.
    """
    n = keys.shape[1]
    dims = keys.any(axis=2).sum(axis=1)
    kept: list[int] = []
    for i in np.argsort(dims, kind="stable"):
        P = keys[i]
        smaller = [j for j in kept if dims[j] < dims[i]]
        if smaller:
            piv = np.nonzero(P.any(axis=1))[0]
            cand = keys[smaller]
            # a candidate lies in P iff its rows reduce to zero modulo P
            resid = (cand - np.einsum("kri,ij->krj", cand[:, :, piv], P[piv])) % p
            sub = cand[~resid.any(axis=(1, 2))]
            if len(sub) and Subspace(sub.reshape(-1, n), n, p).dim == dims[i]:
                continue
        kept.append(i)
    return keys[sorted(kept)]


def all_ideals(S: SkewRing, max_dim: int | None = None) -> list[Subspace]:
    """Every two-sided ideal, sorted by (dimension, RREF)."""
    n, p = S.dim, S.p
    cap = dimension_cap(p, max_dim)
    if n > cap:
        raise CapExceeded(f"skew ring dimension {n} exceeds the enumeration cap {cap} at p={p}")
    if n == 0:
        return [zero_ideal(S)]
    mats = _sandwich_mats(S)
    vecs = all_vectors(n, p, projective=True)
    keys = []
    for start in range(0, len(vecs), _CHUNK):
        keys.append(_principal_keys(S, vecs[start : start + _CHUNK], mats))
    principals = _unique_keys(np.concatenate(keys))
    gens = _join_irreducible(principals, p)

    zero = np.zeros((1, n, n), dtype=np.int64)
    seen = {k.tobytes(): k for k in np.concatenate([zero, principals])}
    frontier = list(seen.values())
    while frontier:
        F = np.array(frontier)
        sums = np.concatenate(
            [np.broadcast_to(F[:, None], (len(F), len(gens), n, n)),
             np.broadcast_to(gens[None], (len(F), len(gens), n, n))],
            axis=2,
        ).reshape(-1, 2 * n, n)
        frontier = []
        for start in range(0, len(sums), _CHUNK):
            for k in batched_rref_keys(sums[start : start + _CHUNK], p):
                b = k.tobytes()
                if b not in seen:
                    seen[b] = k
                    frontier.append(k)
    return sorted(subspace_from_key(k, p) for k in seen.values())


def ideal_product(S: SkewRing, I: Subspace, J: Subspace) -> Subspace:
    """Ideal generated by the products of basis elements."""
    prods = [S.multiply_fast(a, b) for a in I.rows for b in J.rows]
    return ideal_generated_by(S, prods)


# -- grading and the correspondence -------------------------------------------


def is_graded_ideal(S: SkewRing, I: Subspace) -> bool:
    """Every homogeneous component of every basis vector lies in I."""
    groups: dict[str, list[int]] = {}
    for i, (g, _) in enumerate(S.basis):
        groups.setdefault(g, []).append(i)
    for row in I.rows:
        for idx in groups.values():
            part = np.zeros_like(row)
            part[idx] = row[idx]
            if part.any() and not I.contains(part):
                return False
    return True


def meet_diagonal(S: SkewRing, I: Subspace) -> Subspace:
    return I & S.diagonal()


def Phi(S: SkewRing, I: Subspace) -> frozenset[str]:
    """Support of P0(I & A), an invariant ideal of R."""
    A = S.A
    imgs = [A.vector(S.p0(S.from_vector(v))) for v in meet_diagonal(S, I).rows]
    return support_of_ideal(A, Subspace.span(imgs, A.dim, A.p))


def Psi(S: SkewRing, J: Subspace | Iterable[str]) -> Subspace:
    """span{1_x delta_g : x in X_g & U} for the invariant ideal with support U."""
    U = support_of_ideal(S.A, J) if isinstance(J, Subspace) else frozenset(J)
    vecs = []
    for i, (_, x) in enumerate(S.basis):
        if x in U:
            v = np.zeros(S.dim, dtype=np.int64)
            v[i] = 1
            vecs.append(v)
    return Subspace.span(vecs, S.dim, S.p)


def invariant_supports(S: SkewRing) -> list[frozenset[str]]:
    """Supports of the G-invariant ideals of R, decided in the function algebra."""
    return [support_of_ideal(S.A, J) for J in invariant_ideals(S.A)]


def graded_ideals(S: SkewRing) -> list[Subspace]:
    """Psi-images of the invariant ideals; no enumeration cap needed."""
    return sorted(Psi(S, U) for U in invariant_supports(S))


# -- lattice properties -------------------------------------------------------


def has_intersection_property(S: SkewRing, ideals: Sequence[Subspace] | None = None) -> bool:
    ideals = all_ideals(S) if ideals is None else ideals
    return all(meet_diagonal(S, I).dim > 0 for I in ideals if I.dim > 0)


def has_residual_intersection_property(S: SkewRing, max_dim: int | None = None) -> bool:
    for U in invariant_supports(S):
        Q = quotient_skew_ring(S, U).quotient
        if not has_intersection_property(Q, all_ideals(Q, max_dim)):
            return False
    return True


def is_simple(S: SkewRing, ideals: Sequence[Subspace] | None = None) -> bool:
    ideals = all_ideals(S) if ideals is None else ideals
    return S.dim > 0 and len(ideals) == 2


def _is_prime_over(S: SkewRing, ideals: Sequence[Subspace]) -> bool:
    nonzero = [I for I in ideals if I.dim > 0]
    for i, I in enumerate(nonzero):
        for J in nonzero[i:]:
            if ideal_product(S, I, J).dim == 0 or ideal_product(S, J, I).dim == 0:
                return False
    return True


def is_prime(S: SkewRing, ideals: Sequence[Subspace] | None = None) -> bool:
    ideals = all_ideals(S) if ideals is None else ideals
    return S.dim > 0 and _is_prime_over(S, ideals)


def is_graded_simple(S: SkewRing) -> bool:
    return S.dim > 0 and len(graded_ideals(S)) == 2


def is_graded_prime(S: SkewRing) -> bool:
    return S.dim > 0 and _is_prime_over(S, graded_ideals(S))


def centralizer_of_A(S: SkewRing) -> Subspace:
    """Nullspace of b -> (a b - b a) stacked over the unit monomials a."""
    n = S.dim
    blocks = [S.left_mats[i] - S.right_mats[i] for i in S.unit_indices()]
    if not blocks or n == 0:
        return Subspace.full(n, S.p)
    N = nullspace(np.vstack(blocks) % S.p, S.p)
    return Subspace(N, n, S.p) if len(N) else Subspace.zero(n, S.p)


def is_A_maximal_commutative(S: SkewRing) -> bool:
    return centralizer_of_A(S) == S.diagonal()


# -- identities checked by the verifier ---------------------------------------


def local_units_identity(I: Subspace, J: Subspace, K: Subspace) -> bool:
    """(I + J) & (K + J) == (I & K) + J."""
    return ((I + J) & (K + J)) == ((I & K) + J)


def diagonal_ideal_of(S: SkewRing, I: Subspace) -> Subspace:
    """S I0 S, the ideal generated by I & A."""
    return ideal_generated_by(S, meet_diagonal(S, I).rows)


def unit_components_in(S: SkewRing, I: Subspace) -> bool:
    """Each unit-indexed piece of an element of I & A lies in I."""
    for row in meet_diagonal(S, I).rows:
        s = S.from_vector(row)
        for g in s.support():
            if not I.contains(S.graded_part(s, g).to_vector()):
                return False
    return True


__all__ = [
    "TwoSidedIdeal",
    "all_ideals",
    "centralizer_of_A",
    "dimension_cap",
    "graded_ideals",
    "has_intersection_property",
    "has_residual_intersection_property",
    "ideal_generated_by",
    "ideal_product",
    "is_A_maximal_commutative",
    "is_G_prime",
    "is_G_simple",
    "is_graded_ideal",
    "is_graded_prime",
    "is_graded_simple",
    "is_prime",
    "is_simple",
    "is_two_sided",
    "local_units_identity",
    "Phi",
    "Psi",
    "principal_ideal",
    "ideal_from_open",
]
