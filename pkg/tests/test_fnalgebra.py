import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sga.action import invariant_subsets, random_instance
from sga.errors import ValidationError
from sga.fixtures import fix_a, fix_b, fix_c
from sga.fnalgebra import (
    FnElement,
    PrimeField,
    all_ideals_of_R,
    all_subsets,
    check_quotient_iso,
    ideal_from_open,
    indicator,
    induced_action,
    invariant_ideals,
    is_G_prime,
    is_G_simple,
    is_ideal,
    quotient_action,
    support_of_ideal,
)
from sga.groupoid import trivial_groupoid
from sga.action import FinitePartialAction


def test_field_arithmetic():
    F = PrimeField(5)
    assert F.inv(2) == 3
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ValidationError):
        PrimeField(4)


def test_pointwise_operations():
    pts = ("x1", "x2")
    f = FnElement(pts, (1, 2), 3)
    g = FnElement(pts, (2, 2), 3)
    assert (f + g).values == (0, 1)
    assert (f * g).values == (2, 1)
    assert (f - f).is_zero()
    assert f("x2") == 2 and g.support() == {"x1", "x2"}


def test_fix_b_alpha_is_coordinate_swap():
    A = induced_action(fix_b(), 2)
    assert A.D("e") == {"x1", "x2"}
    e1, e2 = A.basis()
    assert A.alpha("g", e1) == e2 and A.alpha("g", e2) == e1


def test_fix_c_domain_dimension():
    A = induced_action(fix_c(), 2)
    assert A.D("g") == {"x1", "x2"}
    assert len(A.basis(A.D("g"))) == 2


def test_trivial_groupoid_on_one_point():
    a = FinitePartialAction(trivial_groupoid(["o"]), {"x": "o"}, {"o": ["x"]}, {"o": {"x": "x"}})
    A = induced_action(a, 7)
    assert A.dim == 1 and A.alpha("o", A.one()) == A.one()


def test_alpha_rejects_elements_outside_domain():
    A = induced_action(fix_c(), 2)
    with pytest.raises(ValidationError):
        A.alpha("g", indicator(A.points, ["x3"], 2))


def test_ideal_support_round_trip():
    A = induced_action(fix_c(), 3)
    assert ideal_from_open(A, ["x1"]).dim == 1
    assert support_of_ideal(A, ideal_from_open(A, A.points)) == set(A.points)
    for U in all_subsets(A.points):
        J = ideal_from_open(A, U)
        assert is_ideal(A, J) and support_of_ideal(A, J) == U


def test_every_ideal_of_R_is_a_support_ideal():
    A = induced_action(fix_c(), 2)
    assert len(all_ideals_of_R(A)) == 8
    assert [support_of_ideal(A, J) for J in invariant_ideals(A)] == sorted(
        invariant_subsets(fix_c()), key=lambda s: (len(s), sorted(s))
    )


def test_G_simple_and_G_prime_flags():
    B, C, Aa = (induced_action(f(), 2) for f in (fix_b, fix_c, fix_a))
    assert is_G_simple(B) and is_G_prime(B)
    assert not is_G_simple(C) and not is_G_prime(C)
    assert is_G_simple(Aa)


def test_quotient_action():
    A = induced_action(fix_c(), 2)
    Q = quotient_action(A, ["x3"])
    assert Q.points == ("x1", "x2")
    assert Q.action == fix_b()
    assert quotient_action(A, []).action == fix_c()
    assert quotient_action(A, A.points).dim == 0
    assert all(check_quotient_iso(A, U) for U in invariant_subsets(fix_c()))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_axioms_on_fixtures(any_fixture, p):
    induced_action(any_fixture, p).check_axioms()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]))
def test_axioms_on_random_actions(seed, p):
    a = random_instance(seed, 4, 6)
    A = induced_action(a, p)
    A.check_axioms()
    supports = {support_of_ideal(A, J) for J in invariant_ideals(A)}
    assert supports == set(invariant_subsets(a))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_alpha_is_multiplicative_on_random_functions(seed):
    import random

    rng = random.Random(seed)
    a = random_instance(seed, 4, 6)
    A = induced_action(a, 5)
    G = a.groupoid
    for g in G.morphisms:
        dom = sorted(A.D(G.inverse(g)))
        f1, f2 = (
            FnElement(A.points, tuple(rng.randrange(5) if x in dom else 0 for x in A.points), 5)
            for _ in range(2)
        )
        assert A.alpha(g, f1 * f2) == A.alpha(g, f1) * A.alpha(g, f2)
        assert A.alpha(G.inverse(g), A.alpha(g, f1)) == f1
