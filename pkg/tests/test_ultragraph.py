import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sga.errors import ValidationError
from sga.ultragraph import (
    MANY,
    NONE,
    ONE,
    Ultragraph,
    accommodating_family,
    check_KR,
    condition_K,
    exits_of_loop,
    fix_u1,
    fix_u2,
    fix_u3,
    generalized_vertices,
    is_loop,
    is_recurrent,
    is_recurrent_any,
    random_ultragraph,
    relabel,
    relative_range,
    simple_loop_count_at,
    validate,
)


def brute_simple_loops(U, v, max_len):
    """Oracle: count simple loops at v of each length by dynamic programming, capped at 2."""
    ways = {e: int(U.src[e] == v) for e in U.edges}
    found = 0
    for _ in range(max_len):
        found += sum(c for e, c in ways.items() if v in U.rng[e])
        nxt = {f: 0 for f in U.edges}
        for e, c in ways.items():
            for f in U.edges:
                if c and U.src[f] in U.rng[e] and U.src[f] != v:
                    nxt[f] = min(nxt[f] + c, 2)
        ways = nxt
    return (NONE, ONE, MANY)[min(found, 2)]


def test_validate_examples():
    assert validate(fix_u1().to_dict()) == fix_u1()
    assert validate(fix_u3().to_dict()) == fix_u3()
    with pytest.raises(ValidationError, match="empty range"):
        validate({"vertices": ["v"], "edges": [{"id": "e", "source": "v", "range": []}]})
    with pytest.raises(ValidationError, match="unknown"):
        validate({"vertices": ["v"], "edges": [{"id": "e", "source": "w", "range": ["v"]}]})


def test_vertex_families():
    assert set(generalized_vertices(fix_u1()).sets) == {frozenset(), frozenset({"v"})}
    assert len(accommodating_family(fix_u1())) == 2
    assert len(accommodating_family(fix_u3())) == 4
    U = Ultragraph(["a", "b", "c"], {"e": ("a", ["a", "b"])})
    assert {"c"} in generalized_vertices(U)


def test_relative_range():
    U = fix_u3()
    assert relative_range(U, {"v"}, ["e"]) == {"v", "w"}
    assert relative_range(U, {"w"}, ["e"]) == frozenset()
    assert relative_range(U, {"w"}, []) == {"w"}


def test_simple_loop_counts():
    assert simple_loop_count_at(fix_u1(), "v") == ONE
    assert simple_loop_count_at(fix_u2(), "v") == MANY
    assert simple_loop_count_at(fix_u3(), "w") == MANY


def test_condition_k_examples():
    assert condition_K(fix_u1())[0] is False
    assert condition_K(fix_u2())[0] is True
    assert condition_K(fix_u3())[0] is True
    acyclic = Ultragraph(["a", "b"], {"e": ("a", ["b"])})
    assert condition_K(acyclic) == (True, {"a": NONE, "b": NONE})


def test_exits():
    assert exits_of_loop(fix_u1(), ["e"]) == []
    assert ("edge", 1, "f") in exits_of_loop(fix_u2(), ["e"])
    assert ("edge", 1, "f") in exits_of_loop(fix_u3(), ["e"])


def test_recurrence_examples():
    assert not is_recurrent(fix_u1(), ["e"], ["e"])
    assert not is_recurrent_any(fix_u1(), ["e"], 12)
    assert is_recurrent(fix_u2(), ["e"], ["f"])
    assert not is_recurrent(fix_u2(), ["e", "f"], ["e", "f"])
    assert is_loop(fix_u3(), ["e", "f"])


def test_check_kr_fixture_reports():
    r1, r2, r3 = (check_KR(U(), 12) for U in (fix_u1, fix_u2, fix_u3))
    assert (r1.condition_K, r1.bounded_all_recurrent, r1.consistent) == (False, False, True)
    assert (r2.condition_K, r2.bounded_all_recurrent, r2.consistent) == (True, True, True)
    assert r3.condition_K and r3.bounded_all_recurrent


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**7))
def test_simple_loop_count_matches_walk_enumeration(seed):
    U = random_ultragraph(seed, 5, 6)
    bound = 3 * len(U.edges) + 1
    for v in U.vertices:
        assert simple_loop_count_at(U, v) == brute_simple_loops(U, v, bound)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**7), st.randoms(use_true_random=False))
def test_condition_k_is_invariant_under_relabeling(seed, rnd):
    U = random_ultragraph(seed, 5, 6)
    vs, es = list(U.vertices), list(U.edges)
    vnew, enew = vs[:], es[:]
    rnd.shuffle(vnew)
    rnd.shuffle(enew)
    V = relabel(U, dict(zip(vs, vnew)), dict(zip(es, enew)))
    assert condition_K(V)[0] == condition_K(U)[0]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**7))
def test_condition_k_agrees_with_bounded_recurrence(seed):
    assert check_KR(random_ultragraph(seed, 6, 8), 12).consistent
