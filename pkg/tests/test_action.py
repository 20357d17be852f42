import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sga.action import (
    FinitePartialAction,
    fixed_points,
    from_fibred,
    invariant_subsets,
    is_global,
    is_invariant,
    is_minimal,
    is_residually_topologically_free,
    is_topologically_free,
    is_topologically_free_on,
    is_topologically_transitive,
    orbit,
    orbits,
    random_instance,
    restrict,
    to_fibred,
    validate,
)
from sga.errors import ValidationError
from sga.fixtures import fix_a, fix_b, fix_c, fix_d, z2
from sga.groupoid import trivial_groupoid


def trivial_action(n):
    G = trivial_groupoid(["o"])
    pts = [f"x{i}" for i in range(1, n + 1)]
    return FinitePartialAction(G, {x: "o" for x in pts}, {"o": pts}, {"o": {x: x for x in pts}})


def test_fixtures_validate_from_documents(any_fixture):
    assert validate(any_fixture.to_dict()) == any_fixture


def test_map_on_wrong_domain_rejected():
    with pytest.raises(ValidationError, match="bijection"):
        FinitePartialAction(
            z2(), {"x1": "e", "x2": "e", "x3": "e"}, {"g": ["x1"]},
            {"g": {"x1": "x1", "x2": "x2"}},
        )


def test_point_with_unknown_unit_rejected():
    with pytest.raises(ValidationError, match="unknown object"):
        FinitePartialAction(z2(), {"x1": "nowhere"}, {"g": []}, {"g": {}})


def test_globality():
    assert is_global(fix_b())
    assert not is_global(fix_c())
    assert is_global(trivial_action(3))


def test_fibred_round_trip():
    f = to_fibred(fix_b())
    assert set(f.anchor.values()) == {"e"}
    assert from_fibred(f) == fix_b()
    with pytest.raises(ValidationError, match="not global"):
        to_fibred(fix_c())


def test_invariant_subsets():
    assert set(invariant_subsets(fix_c())) == {
        frozenset(), frozenset({"x3"}), frozenset({"x1", "x2"}), frozenset({"x1", "x2", "x3"})
    }
    assert set(invariant_subsets(fix_b())) == {frozenset(), frozenset({"x1", "x2"})}
    assert len(invariant_subsets(trivial_action(2))) == 4


def test_orbits():
    assert orbit(fix_c(), "x1") == {"x1", "x2"}
    assert orbit(fix_c(), "x3") == {"x3"}
    assert orbit(fix_d(), "a") == {"a", "b"}
    assert sorted(map(sorted, orbits(fix_c()))) == [["x1", "x2"], ["x3"]]


def test_minimality_and_transitivity():
    assert is_minimal(fix_b()) and not is_minimal(fix_c())
    assert is_minimal(random_instance(0, 0, 2))
    assert is_topologically_transitive(fix_b())
    assert not is_topologically_transitive(fix_c())
    assert is_topologically_transitive(trivial_action(1))


def test_fixed_points_and_freeness():
    assert fixed_points(fix_b(), "g") == frozenset()
    assert fixed_points(fix_a(), "g") == {"x1"}
    assert fixed_points(fix_c(), "e") == {"x1", "x2", "x3"}
    X = lambda a: frozenset(a.points)
    assert is_topologically_free_on(fix_b(), X(fix_b()))
    assert not is_topologically_free_on(fix_a(), X(fix_a()))
    assert is_topologically_free_on(fix_a(), frozenset())
    assert not is_topologically_free(fix_a())


def test_residual_freeness():
    assert is_residually_topologically_free(fix_c())
    assert not is_residually_topologically_free(fix_a())
    assert is_residually_topologically_free(fix_d())


def test_restriction():
    r = restrict(fix_c(), ["x3"])
    assert r.points == ("x3",) and r.maps["g"] == {}
    rb = restrict(fix_c(), ["x1", "x2"])
    assert rb == fix_b()
    assert restrict(fix_c(), fix_c().points) == fix_c()
    with pytest.raises(ValidationError):
        restrict(fix_c(), ["x1"])


def test_random_instance_examples():
    a = random_instance(1, 3, 4)
    assert validate(a.to_dict()) == a
    assert random_instance(1, 3, 4) == a
    assert random_instance(5, 0, 4).points == ()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4), st.integers(1, 6))
def test_random_instances_satisfy_bounds_and_axioms(seed, points, morphisms):
    a = random_instance(seed, points, morphisms)
    assert 1 <= len(a.points) <= points
    assert len(a.groupoid) <= morphisms
    G = a.groupoid
    for g in G.morphisms:
        gi = G.inverse(g)
        assert set(a.maps[g]) == set(a.domain[gi])
        assert all(a.maps[gi][a.maps[g][x]] == x for x in a.maps[g])
    for M in invariant_subsets(a):
        assert is_invariant(a, M)
        assert validate(restrict(a, M).to_dict()) == restrict(a, M)
