import random
from collections import Counter

import pytest

from sga.action import FinitePartialAction, validate
from sga.corpus import canonical_form, exhaustive_corpus, micro_groupoids, random_corpus
from sga.errors import ValidationError
from sga.groupoid import automorphisms

# frozen from the first enumeration; Z2, Z3, pair2 and the trivial classes
# were also counted by hand (Z3 on 1, 2, 3 points: 2, 4, 7; pair2: 1, 3, 3)
FROZEN_COUNTS = {
    "1": 3, "Z2": 12, "1+1": 5, "Z3": 13, "1+Z2": 23, "1+1+1": 6, "Z4": 32, "V4": 35,
    "pair2": 7, "1+Z3": 24, "Z2+Z2": 23, "1+1+Z2": 27, "1+1+1+1": 6,
}


@pytest.fixture(scope="module")
def corpus():
    return exhaustive_corpus()


def test_micro_groupoid_classes():
    names = [n for n, _ in micro_groupoids(4)]
    assert len(names) == 13 and len(set(names)) == 13
    assert all(len(G) <= 4 for _, G in micro_groupoids(4))
    with pytest.raises(ValidationError):
        micro_groupoids(5)


def test_corpus_size_and_distribution(corpus):
    assert len(corpus) == 216
    per_group = Counter(name.split("/")[0] for name, _ in corpus)
    assert dict(per_group) == FROZEN_COUNTS


def test_corpus_entries_are_valid_and_distinct(corpus):
    forms = set()
    for name, a in corpus:
        assert 1 <= len(a.points) <= 3
        assert validate(a.to_dict()) == a
        forms.add((name.split("/")[0], canonical_form(a)))
    assert len(forms) == len(corpus)


def test_canonical_form_ignores_relabeling(corpus):
    rng = random.Random(0)
    for _, a in rng.sample(corpus, 20):
        pts = list(a.points)
        new = pts[:]
        rng.shuffle(new)
        pi = dict(zip(pts, new))
        b = FinitePartialAction(
            a.groupoid,
            {pi[x]: e for x, e in a.unit.items()},
            {g: [pi[x] for x in d] for g, d in a.domain.items()},
            {g: {pi[x]: pi[y] for x, y in m.items()} for g, m in a.maps.items()},
        )
        autos = automorphisms(a.groupoid)
        assert canonical_form(a, autos) == canonical_form(b, autos)


@pytest.mark.parametrize(
    "group, by_size",
    [("Z2", {1: 2, 2: 4, 3: 6}), ("Z3", {1: 2, 2: 4, 3: 7}), ("pair2", {1: 1, 2: 3, 3: 3})],
)
def test_hand_counted_classes(corpus, group, by_size):
    actions = [a for n, a in corpus if n.split("/")[0] == group]
    assert Counter(len(a.points) for a in actions) == by_size


def test_random_corpus_respects_bounds():
    corp = random_corpus(200, 0, 4, 6, 12)
    assert len(corp) == 200
    for _, a in corp:
        assert 1 <= len(a.points) <= 4 and len(a.groupoid) <= 6 and a.skew_dimension() <= 12
    assert random_corpus(5) == random_corpus(5)
