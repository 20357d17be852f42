import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sga.action import FinitePartialAction, random_instance
from sga.fixtures import fix_a, fix_b, fix_c, fix_d
from sga.groupoid import trivial_groupoid
from sga.skew import SkewRing
from sga.transformation import (
    build,
    check_CTS,
    check_steinberg_iso,
    convolution_associative,
    is_effective,
    is_minimal_groupoid,
    is_strongly_effective,
    is_topologically_transitive_groupoid,
    point_mass,
    steinberg_iso,
    steinberg_multiply,
    unit_indicator,
)


def one_point():
    return FinitePartialAction(trivial_groupoid(["o"]), {"x": "o"}, {"o": ["x"]}, {"o": {"x": "x"}})


def test_sizes():
    assert (len(build(fix_b())), len(build(fix_b()).unit_space)) == (4, 2)
    assert len(build(fix_c())) == 5
    T = build(one_point())
    assert len(T) == 1 and T.arrows == T.unit_space


def test_effectiveness():
    assert is_effective(build(fix_b()))
    assert not is_effective(build(fix_a()))
    assert is_strongly_effective(build(fix_c()))


def test_minimality_and_transitivity():
    for T, expected in ((build(fix_b()), True), (build(fix_c()), False), (build(one_point()), True)):
        assert is_minimal_groupoid(T) is expected
        assert is_topologically_transitive_groupoid(T) is expected


def test_point_mass_convolution_on_fix_b():
    T = build(fix_b())
    # (g,x1) starts at x1 and ends at x2; (g,x2)(g,x1) = (e,x1)
    prod = steinberg_multiply(T, point_mass(T, "(g,x2)"), point_mass(T, "(g,x1)"))
    assert np.array_equal(prod, point_mass(T, "(e,x1)"))
    prod = steinberg_multiply(T, point_mass(T, "(g,x1)"), point_mass(T, "(g,x2)"))
    assert np.array_equal(prod, point_mass(T, "(e,x2)"))
    assert not steinberg_multiply(T, point_mass(T, "(g,x1)"), point_mass(T, "(g,x1)")).any()


def test_unit_indicator_is_two_sided_unit(any_fixture):
    T = build(any_fixture)
    one = unit_indicator(T)
    for a in T.arrows:
        f = point_mass(T, a)
        assert np.array_equal(steinberg_multiply(T, one, f), f)
        assert np.array_equal(steinberg_multiply(T, f, one), f)


def test_isomorphism_on_fixtures(any_fixture):
    S, T = SkewRing.of(any_fixture, 3), build(any_fixture)
    r = check_steinberg_iso(S, T)
    assert r.ok and r.multiplicative_pairs == S.dim**2
    assert np.array_equal(steinberg_iso(S, T)(S.identity_element()), unit_indicator(T))


def test_fix_c_has_25_multiplicative_pairs():
    r = check_steinberg_iso(SkewRing.of(fix_c(), 2), build(fix_c()))
    assert (r.multiplicative_pairs, r.total_pairs) == (25, 25)


def test_fix_d_dimensions_agree():
    assert SkewRing.of(fix_d(), 2).dim == len(build(fix_d())) == 4


@pytest.mark.parametrize("make", [fix_a, fix_b, fix_c, fix_d])
def test_action_and_groupoid_dynamics_agree(make):
    rows = check_CTS(make())
    assert all(x == y for _, x, y in rows), rows


def test_fix_a_report_has_effective_false_on_both_sides():
    row = next(r for r in check_CTS(fix_a()) if r[0] == "topologically-free/effective")
    assert row[1:] == (False, False)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5]))
def test_random_instances(seed, p):
    a = random_instance(seed, 4, 6, 12)
    S, T = SkewRing.of(a, p), build(a)
    assert check_steinberg_iso(S, T).ok
    assert all(x == y for _, x, y in check_CTS(a))
    rng = random.Random(seed)
    triples = [
        tuple(np.array([rng.randrange(p) for _ in range(len(T))]) for _ in range(3))
        for _ in range(10)
    ]
    assert convolution_associative(T, triples, p)
