import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sga.errors import ValidationError
from sga.groupoid import (
    Groupoid,
    automorphisms,
    components,
    composable_pairs,
    cyclic_group,
    disjoint_union,
    from_group,
    isotropy_group,
    klein_group,
    pair_groupoid,
    symmetric_group_3,
    trivial_groupoid,
    validate,
)

Z2_DOC = {
    "objects": ["e"],
    "morphisms": [{"id": "e", "src": "e", "dst": "e"}, {"id": "g", "src": "e", "dst": "e"}],
    "identity": {"e": "e"},
    "inverse": {"e": "e", "g": "g"},
    "compose": [["e", "e", "e"], ["e", "g", "g"], ["g", "e", "g"], ["g", "g", "e"]],
}


def z2():
    return from_group(["e", "g"], [["e", "g"], ["g", "e"]])


def test_validate_z2_document():
    G = validate(Z2_DOC)
    assert G.morphisms == ("e", "g")
    assert G.compose("g", "g") == "e"


def test_validate_pair_groupoid_document():
    doc = {
        "objects": ["e1", "e2"],
        "morphisms": [
            {"id": "id1", "src": "e1", "dst": "e1"},
            {"id": "id2", "src": "e2", "dst": "e2"},
            {"id": "h", "src": "e1", "dst": "e2"},
            {"id": "hi", "src": "e2", "dst": "e1"},
        ],
        "identity": {"e1": "id1", "e2": "id2"},
        "inverse": {"id1": "id1", "id2": "id2", "h": "hi", "hi": "h"},
        "compose": [
            ["id1", "id1", "id1"], ["id2", "id2", "id2"], ["h", "id1", "h"],
            ["id2", "h", "h"], ["hi", "id2", "hi"], ["id1", "hi", "hi"],
            ["hi", "h", "id1"], ["h", "hi", "id2"],
        ],
    }
    G = validate(doc)
    assert len(G) == 4 and len(G.units) == 2


def test_non_composable_product_rejected():
    doc = pair_groupoid(2).to_dict()
    doc["compose"].append(["(0,1)", "(0,1)", "(0,1)"])
    with pytest.raises(ValidationError, match="non-composable"):
        validate(doc)


def test_missing_product_rejected():
    doc = dict(Z2_DOC, compose=Z2_DOC["compose"][:-1])
    with pytest.raises(ValidationError, match="missing product"):
        validate(doc)


def test_bad_inverse_rejected():
    doc = dict(Z2_DOC, inverse={"e": "e", "g": "e"})
    with pytest.raises(ValidationError, match="inverse"):
        validate(doc)


def test_missing_field_rejected():
    with pytest.raises(ValidationError, match="missing a field"):
        validate({"objects": ["e"]})


def test_isotropy_groups():
    assert isotropy_group(z2(), "e") == {"e", "g"}
    assert isotropy_group(pair_groupoid(2), "0") == {"(0,0)"}
    U = disjoint_union(z2(), pair_groupoid(2))
    assert isotropy_group(U, "A.e") == {"A.e", "A.g"}


def test_from_group_sizes():
    assert len(from_group(*cyclic_group(3))) == 3
    assert len(from_group(*cyclic_group(3)).objects) == 1
    assert len(from_group(*symmetric_group_3())) == 6


def test_non_associative_magma_rejected():
    # x*y defined by a Latin square that is not a group: subtraction mod 3
    els = ["a", "b", "c"]
    table = [[els[(i - j) % 3] for j in range(3)] for i in range(3)]
    with pytest.raises(ValidationError):
        from_group(els, table)


@pytest.mark.parametrize("n, morphisms, units", [(1, 1, 1), (2, 4, 2), (3, 9, 3)])
def test_pair_groupoid_sizes(n, morphisms, units):
    G = pair_groupoid(n)
    assert len(G) == morphisms and len(G.units) == units
    assert all(isotropy_group(G, e) == {G.identity(e)} for e in G.objects)


def test_composable_pair_counts():
    assert len(composable_pairs(z2())) == 4
    assert len(composable_pairs(pair_groupoid(2))) == 8
    assert len(composable_pairs(disjoint_union(z2(), z2()))) == 8


def test_components_and_automorphisms():
    U = disjoint_union(z2(), pair_groupoid(2), trivial_groupoid(["o"]))
    assert sorted(len(c) for c in components(U)) == [1, 1, 2]
    assert len(automorphisms(from_group(*klein_group()))) == 6
    assert len(automorphisms(from_group(*cyclic_group(4)))) == 2


def test_round_trip_through_document():
    for G in (z2(), pair_groupoid(3), disjoint_union(z2(), pair_groupoid(2))):
        assert validate(G.to_dict()) == G


GROUPOIDS = [
    z2(),
    from_group(*cyclic_group(4)),
    from_group(*klein_group()),
    from_group(*symmetric_group_3()),
    pair_groupoid(3),
    disjoint_union(pair_groupoid(2), from_group(*cyclic_group(3))),
]


@pytest.mark.parametrize("G", GROUPOIDS, ids=repr)
def test_axioms_exhaustively(G: Groupoid):
    for g, h in itertools.product(G.morphisms, repeat=2):
        gh = G.compose(g, h)
        assert (gh is not None) == (G.src(g) == G.dst(h))
        if gh is not None:
            assert G.src(gh) == G.src(h) and G.dst(gh) == G.dst(g)
    for g, h, k in itertools.product(G.morphisms, repeat=3):
        if G.src(g) == G.dst(h) and G.src(h) == G.dst(k):
            assert G.compose(G.compose(g, h), k) == G.compose(g, G.compose(h, k))
    for g in G.morphisms:
        gi = G.inverse(g)
        assert G.compose(gi, g) == G.identity(G.src(g))
        assert G.compose(g, gi) == G.identity(G.dst(g))
    assert set(G.units) == {G.compose(g, G.inverse(g)) for g in G.morphisms}


@settings(max_examples=40, deadline=None)
@given(st.permutations(["e", "g", "h", "k"]))
def test_relabeled_klein_group_stays_valid(names):
    els, table = klein_group()
    rename = dict(zip(els, names))
    # identity must stay first in from_group's convention
    table = [[rename[x] for x in row] for row in table]
    G = from_group([rename[x] for x in els], table)
    assert len(G) == 4 and len(G.objects) == 1
