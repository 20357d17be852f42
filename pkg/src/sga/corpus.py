"""Instance corpora: every small partial action up to isomorphism, and seeded random ones."""

from __future__ import annotations

import itertools
import json
from typing import Iterator

from .action import FinitePartialAction, random_instance
from .errors import ValidationError
from .groupoid import (
    Groupoid,
    automorphisms,
    cyclic_group,
    disjoint_union,
    from_group,
    klein_group,
    pair_groupoid,
    trivial_groupoid,
)


def _group(n: int) -> Groupoid:
    return from_group(*cyclic_group(n))


def micro_groupoids(max_morphisms: int = 4) -> list[tuple[str, Groupoid]]:
    """One groupoid per isomorphism class with at most ``max_morphisms`` morphisms.

    A connected finite groupoid with n objects and isotropy H has n^2 |H|
    morphisms, so up to four morphisms the connected pieces are the trivial
    group, Z2, Z3, Z4, Z2 x Z2 and the pair groupoid on two objects. Every
    groupoid is a disjoint union of connected ones.
    """
    if max_morphisms > 4:
        raise ValidationError("the exhaustive table covers at most four morphisms")
    pieces = {
        "1": (1, lambda: trivial_groupoid(["o"])),
        "Z2": (2, lambda: _group(2)),
        "Z3": (3, lambda: _group(3)),
        "Z4": (4, lambda: _group(4)),
        "V4": (4, lambda: from_group(*klein_group())),
        "pair2": (4, lambda: pair_groupoid(2)),
    }
    out = []
    names = list(pieces)
    for total in range(1, max_morphisms + 1):
        seen = set()
        for k in range(1, total + 1):
            for combo in itertools.combinations_with_replacement(names, k):
                if sum(pieces[c][0] for c in combo) != total or combo in seen:
                    continue
                seen.add(combo)
                parts = [pieces[c][1]() for c in combo]
                G = parts[0] if len(parts) == 1 else disjoint_union(*parts)
                out.append(("+".join(combo), G))
    return out


def _partial_bijections(dom: list[str], cod: list[str]) -> Iterator[dict[str, str]]:
    for r in range(min(len(dom), len(cod)) + 1):
        for A in itertools.combinations(dom, r):
            for B in itertools.permutations(cod, r):
                yield dict(zip(A, B))


def _partial_involutions(pts: list[str]) -> Iterator[dict[str, str]]:
    for f in _partial_bijections(pts, pts):
        if set(f) == set(f.values()) and all(f[f[x]] == x for x in f):
            yield f


def _candidate_actions(G: Groupoid, n: int) -> Iterator[FinitePartialAction]:
    points = [f"x{i}" for i in range(1, n + 1)]
    pairs = []
    for g in G.morphisms:
        gi = G.inverse(g)
        if not G.is_unit(g) and g <= gi:
            pairs.append(g)
    for labels in itertools.product(G.objects, repeat=n):
        unit = dict(zip(points, labels))
        block = {e: [x for x in points if unit[x] == e] for e in G.objects}
        choices = []
        for g in pairs:
            gi = G.inverse(g)
            if g == gi:
                choices.append(list(_partial_involutions(block[G.src(g)])))
            else:
                choices.append(list(_partial_bijections(block[G.src(g)], block[G.dst(g)])))
        for pick in itertools.product(*choices):
            maps = {}
            for g, f in zip(pairs, pick):
                maps[g] = f
                maps[G.inverse(g)] = {y: x for x, y in f.items()}
            domain = {g: list(f.values()) for g, f in maps.items()}
            try:
                yield FinitePartialAction(G, unit, domain, maps)
            except ValidationError:
                continue


def canonical_form(a: FinitePartialAction, autos: list[dict[str, str]] | None = None) -> str:
    """Least serialization over groupoid automorphisms and point relabelings."""
    G = a.groupoid
    autos = automorphisms(G) if autos is None else autos
    best = None
    for sigma in autos:
        obj = {G.unit_object(u): G.unit_object(sigma[u]) for u in G.units}
        for perm in itertools.permutations(a.points):
            pi = dict(zip(a.points, perm))
            doc = (
                sorted((pi[x], obj[e]) for x, e in a.unit.items()),
                sorted(
                    (sigma[g], sorted((pi[x], pi[y]) for x, y in a.maps[g].items()))
                    for g in G.morphisms
                ),
            )
            s = json.dumps(doc)
            if best is None or s < best:
                best = s
    return best


def exhaustive_corpus(
    max_points: int = 3, max_morphisms: int = 4, min_points: int = 1
) -> list[tuple[str, FinitePartialAction]]:
    """All valid partial actions, one per isomorphism class, in a stable order."""
    out = []
    for gname, G in micro_groupoids(max_morphisms):
        autos = automorphisms(G)
        for n in range(min_points, max_points + 1):
            seen: dict[str, FinitePartialAction] = {}
            for a in _candidate_actions(G, n):
                key = canonical_form(a, autos)
                seen.setdefault(key, a)
            for i, key in enumerate(sorted(seen)):
                out.append((f"{gname}/X{n}/{i}", seen[key]))
    return out


def random_corpus(
    count: int = 200,
    first_seed: int = 0,
    max_points: int = 4,
    max_morphisms: int = 6,
    max_skew_dim: int = 12,
) -> list[tuple[str, FinitePartialAction]]:
    return [
        (f"seed{s}", random_instance(s, max_points, max_morphisms, max_skew_dim))
        for s in range(first_seed, first_seed + count)
    ]
