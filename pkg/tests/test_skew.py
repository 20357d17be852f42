import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sga.action import invariant_subsets, random_instance
from sga.errors import ValidationError
from sga.fixtures import fix_a, fix_b, fix_c, fix_d
from sga.fnalgebra import indicator
from sga.skew import SkewRing, quotient_skew_ring, s_unit


def test_basis_size_is_sum_of_domain_sizes(any_fixture):
    assert SkewRing.of(any_fixture, 2).dim == any_fixture.skew_dimension()


def test_fix_b_square_of_monomial_vanishes():
    S = SkewRing.of(fix_b(), 2)
    m = S.monomial("g", "x1")
    assert (m * m).is_zero()


def test_fix_b_monomial_products():
    S = SkewRing.of(fix_b(), 2)
    # 1_{x1} delta_g * 1_{x2} delta_g = alpha_g(1_{x2} 1_{x2}) delta_e = 1_{x1} delta_e
    assert S.monomial("g", "x1") * S.monomial("g", "x2") == S.monomial("e", "x1")


def test_non_composable_monomials_multiply_to_zero():
    S = SkewRing.of(fix_d(), 2)
    assert (S.monomial("(1,0)", "b") * S.monomial("(1,0)", "b")).is_zero()


def test_identity_elements():
    A = SkewRing.of(fix_a(), 2)
    assert A.identity_element() == A.monomial("e", "x1")
    D = SkewRing.of(fix_d(), 2)
    assert D.identity_element() == D.monomial("(0,0)", "a") + D.monomial("(1,1)", "b")
    empty = SkewRing.of(random_instance(3, 0, 3), 2)
    assert empty.dim == 0 and empty.identity_element().is_zero()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_identity_is_two_sided_unit(any_fixture, p):
    S = SkewRing.of(any_fixture, p)
    one = S.identity_element()
    for m in S.monomials():
        assert one * m == m and m * one == m


def test_structural_maps_on_fix_c():
    S = SkewRing.of(fix_c(), 2)
    A = S.A
    s = S.monomial("e", "x1") + S.monomial("g", "x1")
    assert S.p0(s) == indicator(A.points, ["x1"], 2)
    assert S.p0(S.monomial("g", "x2")).is_zero()
    assert S.E(S.identity_element()) == S.identity_element()
    assert S.E(S.monomial("g", "x1")).is_zero()
    t = S.monomial("e", "x1") + S.monomial("g", "x2")
    assert S.tau(t) == indicator(A.points, ["x1", "x2"], 2)
    for f in (A.one(), indicator(A.points, ["x2"], 2), A.zero()):
        assert S.p0(S.psi(f)) == f


def test_components_and_homogeneity():
    S = SkewRing.of(fix_c(), 2)
    one = S.identity_element()
    assert S.component(one, "e") == S.A.one()
    assert S.component(one, "g").is_zero()
    assert S.is_homogeneous(S.monomial("g", "x1") + S.monomial("g", "x2"))
    assert not S.is_homogeneous(S.monomial("g", "x1") + S.monomial("e", "x1"))
    assert S.check_graded()


def test_coefficients_outside_domain_rejected():
    S = SkewRing.of(fix_c(), 2)
    with pytest.raises(ValidationError):
        S.element({"g": {"x3": 1}})


def test_serialization_of_elements():
    S = SkewRing.of(fix_c(), 3)
    s = S.element({"g": {"x1": 2}, "e": {"x3": 1}})
    d = s.to_dict()
    assert d["p"] == 3 and d["coefficients"]["g"]["x1"] == 2
    assert S.from_vector(s.to_vector()) == s


def test_s_unit_is_an_idempotent_unit():
    A = SkewRing.of(fix_c(), 3).A
    fs = [indicator(A.points, ["x1"], 3), A.basis()[2] * 2]
    u = s_unit(fs)
    assert u * u == u and all(u * f == f for f in fs)


def test_quotient_dimensions():
    S = SkewRing.of(fix_c(), 2)
    q = quotient_skew_ring(S, ["x3"])
    assert q.quotient.dim == 4 and q.kernel.dim == 1
    zero = quotient_skew_ring(S, [])
    assert zero.quotient.dim == S.dim
    assert all(zero.project(m).to_vector().tolist() == m.to_vector().tolist() for m in S.monomials())
    for U in invariant_subsets(fix_c()):
        seq = quotient_skew_ring(S, U)
        assert seq.kernel.dim + seq.quotient.dim == S.dim
        assert seq.check_exact()


def test_quotient_by_non_invariant_set_rejected():
    with pytest.raises(ValidationError):
        quotient_skew_ring(SkewRing.of(fix_c(), 2), ["x1"])


def _random_vec(rng, S):
    return np.array([rng.randrange(S.p) for _ in range(S.dim)], dtype=np.int64)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5, 7]))
def test_ring_axioms_on_random_instances(seed, p):
    a = random_instance(seed, 4, 6, 12)
    S = SkewRing.of(a, p)
    assert S.check_associative() and S.check_graded()
    rng = random.Random(seed)
    for _ in range(5):
        x, y, z = (S.from_vector(_random_vec(rng, S)) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert np.array_equal((x * y).to_vector(), S.multiply_fast(x.to_vector(), y.to_vector()))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_conditional_expectation_identities(seed, p):
    a = random_instance(seed, 4, 6, 12)
    S = SkewRing.of(a, p)
    rng = random.Random(seed)
    diag = S.unit_indices()
    for _ in range(5):
        v = _random_vec(rng, S)
        w = np.zeros_like(v)
        w[diag] = v[diag]
        x, b = S.from_vector(w), S.from_vector(_random_vec(rng, S))
        assert S.p0(x * b) == S.p0(x) * S.p0(b)
        assert S.E(x * b) == x * S.E(b) and S.E(b * x) == S.E(b) * x
        assert S.E(S.E(b)) == S.E(b)
