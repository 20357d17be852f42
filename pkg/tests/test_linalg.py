import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sga.linalg import (
    Subspace,
    all_vectors,
    batched_rref_keys,
    nullspace,
    rank,
    rref,
    subspace_from_key,
)


def test_rref_small_example():
    R, piv = rref([[1, 1, 0], [1, 0, 1], [0, 1, 1]], 2)
    assert piv == [0, 1]
    assert R.tolist() == [[1, 0, 1], [0, 1, 1]]


def test_rank_over_different_fields():
    M = [[1, 2], [2, 1]]
    assert rank(M, 3) == 1  # second row is twice the first mod 3
    assert rank(M, 5) == 2


def test_all_vectors_counts():
    assert len(all_vectors(3, 2)) == 8
    assert len(all_vectors(3, 3, projective=True)) == 13
    assert len(all_vectors(0, 2)) == 1


def test_subspace_lattice_operations():
    p, n = 3, 3
    U = Subspace.span([[1, 0, 0], [0, 1, 0]], n, p)
    V = Subspace.span([[0, 1, 0], [0, 0, 1]], n, p)
    assert (U & V) == Subspace.span([[0, 1, 0]], n, p)
    assert (U + V) == Subspace.full(n, p)
    assert Subspace.zero(n, p) <= U <= Subspace.full(n, p)
    assert [2, 1, 0] in U and [0, 0, 1] not in U


def test_zero_dimensional_space():
    assert Subspace.full(0, 2) == Subspace.zero(0, 2)
    assert Subspace.full(0, 2).dim == 0


matrices = st.integers(1, 4).flatmap(
    lambda n: st.tuples(
        st.sampled_from([2, 3, 5]),
        arrays(np.int64, st.tuples(st.integers(0, 5), st.just(n)), elements=st.integers(0, 6)),
    )
)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rank_nullity(pm):
    p, M = pm
    n = M.shape[1]
    N = nullspace(M % p, p) if len(M) else np.eye(n, dtype=np.int64)
    assert rank(M, p) + len(N) == n
    assert not ((M @ N.T) % p).any()


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_batched_keys_match_single_rref(pm):
    p, M = pm
    if not len(M):
        return
    key = batched_rref_keys(M[None], p)[0]
    assert subspace_from_key(key, p) == Subspace(M, M.shape[1], p)


@settings(max_examples=60, deadline=None)
@given(matrices, matrices)
def test_intersection_dimension_formula(a, b):
    (p, M1), (_, M2) = a, b
    n = M1.shape[1]
    M2 = M2[:, :n] if M2.shape[1] >= n else np.pad(M2, ((0, 0), (0, n - M2.shape[1])))
    U, V = Subspace(M1, n, p), Subspace(M2, n, p)
    assert (U + V).dim + (U & V).dim == U.dim + V.dim
    assert (U & V) <= U and U <= (U + V)


def test_subspace_count_matches_gaussian_binomials():
    # number of subspaces of F_2^3: 1 + 7 + 7 + 1
    spans = {
        Subspace(np.array(vs), 3, 2)
        for k in range(4)
        for vs in itertools.combinations(all_vectors(3, 2).tolist(), k)
    }
    assert len(spans) == 16
