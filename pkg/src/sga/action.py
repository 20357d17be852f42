"""Partial actions of finite groupoids on finite discrete point sets.

On a finite discrete space every subset is clopen, so "closed invariant
subset" and "invariant subset" coincide, interiors are the sets
themselves, and topological freeness on F reduces to: no non-unit
isotropy morphism fixes a point of F. The checkers below still follow the
open-set definitions; where a decision procedure is used instead of the
literal quantifier (transitivity), the reduction is noted.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ValidationError
from .groupoid import (
    Groupoid,
    components,
    cyclic_group,
    disjoint_union,
    from_group,
    isotropy_group,
    klein_group,
    symmetric_group_3,
    transitive_groupoid,
)
from . import groupoid as _groupoid


def subset_key(s: Iterable[str]) -> tuple:
    s = sorted(s)
    return (len(s), s)


class FinitePartialAction:
    """theta = (X_g, theta_g) with X the disjoint union of unit blocks X_e.

    ``unit[x]`` is the object e with x in X_e. ``maps[g]`` is theta_g as a
    dict on X_{g^-1}. The constructor checks every axiom exhaustively.
    """

    def __init__(
        self,
        groupoid: Groupoid,
        unit: Mapping[str, str],
        domain: Mapping[str, Iterable[str]],
        maps: Mapping[str, Mapping[str, str]],
    ):
        G = groupoid
        self.groupoid = G
        self.points: tuple[str, ...] = tuple(sorted(unit))
        self.unit = dict(unit)
        for x, e in self.unit.items():
            if e not in G.objects:
                raise ValidationError(f"point {x!r} is labeled with unknown object {e!r}")
        blocks = {e: frozenset(x for x in self.points if self.unit[x] == e) for e in G.objects}
        dom = {g: frozenset(v) for g, v in domain.items()}
        mp = {g: dict(v) for g, v in maps.items()}
        for g in list(dom) + list(mp):
            if g not in G.morphisms:
                raise ValidationError(f"unknown morphism {g!r} in action data")
        for e in G.objects:
            u = G.identity(e)
            if u not in dom:
                dom[u] = blocks[e]
            elif dom[u] != blocks[e]:
                raise ValidationError(
                    f"domain of unit {u!r} must be the block of points labeled {e!r}"
                )
            if u not in mp:
                mp[u] = {x: x for x in blocks[e]}
        for g in G.morphisms:
            if g not in dom:
                raise ValidationError(f"no domain given for morphism {g!r}")
            if g not in mp:
                raise ValidationError(f"no map given for morphism {g!r}")
        self.domain: dict[str, frozenset[str]] = dom
        self.maps: dict[str, dict[str, str]] = mp
        self._check()

    def _check(self) -> None:
        G, dom, mp = self.groupoid, self.domain, self.maps
        pts = set(self.points)
        for g in G.morphisms:
            if not dom[g] <= pts:
                raise ValidationError(f"X_{g} contains unknown points")
            # X_g inside X_{r(g)}
            if not dom[g] <= dom[G.identity(G.dst(g))]:
                w = sorted(dom[g] - dom[G.identity(G.dst(g))])[0]
                raise ValidationError(
                    f"X_g is not contained in X_r(g) for g={g!r}; witness point {w!r}"
                )
        for g in G.morphisms:
            gi = G.inverse(g)
            m = mp[g]
            if set(m) != dom[gi] or set(m.values()) != dom[g] or len(set(m.values())) != len(m):
                raise ValidationError(
                    f"theta_{g} is not a bijection from X_{gi} onto X_{g}"
                )
        for g in G.morphisms:
            gi = G.inverse(g)
            for x, y in mp[g].items():
                if mp[gi].get(y) != x:
                    raise ValidationError(
                        f"theta_{gi} is not the inverse of theta_{g}; witness point {x!r}"
                    )
        for e in G.objects:
            u = G.identity(e)
            for x, y in mp[u].items():
                if x != y:
                    raise ValidationError(f"unit {u!r} does not act as the identity at {x!r}")
        for g in G.morphisms:
            for h in G.morphisms:
                gh = G.compose(g, h)
                if gh is None:
                    continue
                dom_ghi = dom[G.inverse(gh)]
                target = dom[G.inverse(g)] & dom[h]
                for x, hx in mp[h].items():
                    if hx not in target:
                        continue
                    if x not in dom_ghi:
                        raise ValidationError(
                            f"domain axiom fails for (g,h)=({g!r},{h!r}); witness point {x!r}"
                        )
                    if mp[g][hx] != mp[gh][x]:
                        raise ValidationError(
                            f"composition axiom fails for (g,h)=({g!r},{h!r}); witness point {x!r}"
                        )

    # -- accessors --------------------------------------------------------

    def theta(self, g: str, x: str) -> str:
        return self.maps[g][x]

    def block(self, e: str) -> frozenset[str]:
        return self.domain[self.groupoid.identity(e)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinitePartialAction):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash(repr(self.to_dict()))

    def __repr__(self) -> str:
        return (
            f"FinitePartialAction(points={len(self.points)}, "
            f"morphisms={len(self.groupoid.morphisms)})"
        )

    def to_dict(self) -> dict:
        G = self.groupoid
        return {
            "groupoid": G.to_dict(),
            "points": [{"id": x, "unit": self.unit[x]} for x in self.points],
            "domain": {g: sorted(self.domain[g]) for g in G.morphisms},
            "map": {g: dict(sorted(self.maps[g].items())) for g in G.morphisms},
        }

    def skew_dimension(self) -> int:
        return sum(len(self.domain[g]) for g in self.groupoid.morphisms)


def validate(raw: Mapping) -> FinitePartialAction:
    try:
        G = raw["groupoid"]
        if not isinstance(G, Groupoid):
            G = _groupoid.validate(G)
        unit = {}
        for p in raw["points"]:
            if p["id"] in unit:
                raise ValidationError(f"duplicate point {p['id']!r}")
            unit[p["id"]] = p["unit"]
        domain = raw.get("domain", {})
        maps = raw.get("map", {})
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"action description is missing a field: {exc}") from None
    return FinitePartialAction(G, unit, domain, maps)


def is_global(a: FinitePartialAction) -> bool:
    G = a.groupoid
    return all(a.domain[g] == a.domain[G.identity(G.dst(g))] for g in G.morphisms)


# -- fibred actions -----------------------------------------------------------


@dataclass(frozen=True)
class FibredAction:
    """Anchor map x -> object and the action (g, x) -> g.x on s(g) = anchor(x)."""

    groupoid: Groupoid
    anchor: Mapping[str, str]
    act: Mapping[tuple[str, str], str]


def to_fibred(a: FinitePartialAction) -> FibredAction:
    if not is_global(a):
        raise ValidationError("action not global")
    G = a.groupoid
    act = {}
    for g in G.morphisms:
        for x, y in a.maps[g].items():
            act[(g, x)] = y
    return FibredAction(G, dict(a.unit), act)


def from_fibred(f: FibredAction) -> FinitePartialAction:
    G = f.groupoid
    pts = sorted(f.anchor)
    pull = {(g, x) for g in G.morphisms for x in pts if G.src(g) == f.anchor[x]}
    if set(f.act) != pull:
        raise ValidationError("fibred action must be defined exactly on the pullback")
    for x in pts:
        if f.act[(G.identity(f.anchor[x]), x)] != x:
            raise ValidationError(f"anchor identity does not fix {x!r}")
    for g, h in _groupoid.composable_pairs(G):
        for x in pts:
            if (h, x) not in pull:
                continue
            hx = f.act[(h, x)]
            if (g, hx) not in pull:
                raise ValidationError(f"({g!r}, {h!r}.{x!r}) leaves the pullback")
            if f.act[(G.compose(g, h), x)] != f.act[(g, hx)]:
                raise ValidationError(f"(gh).x != g.(h.x) for g={g!r}, h={h!r}, x={x!r}")
    domain = {g: [x for x in pts if f.anchor[x] == G.dst(g)] for g in G.morphisms}
    maps = {
        g: {x: f.act[(g, x)] for x in pts if f.anchor[x] == G.src(g)} for g in G.morphisms
    }
    return FinitePartialAction(G, f.anchor, domain, maps)


# -- orbits and invariant subsets --------------------------------------------


def orbit(a: FinitePartialAction, x: str) -> frozenset[str]:
    if x not in a.unit:
        raise ValidationError(f"unknown point {x!r}")
    G = a.groupoid
    return frozenset(
        a.maps[g][x] for g in G.morphisms if x in a.domain[G.inverse(g)]
    )


def orbits(a: FinitePartialAction) -> list[frozenset[str]]:
    seen: set[str] = set()
    out = []
    for x in a.points:
        if x not in seen:
            o = orbit(a, x)
            seen |= o
            out.append(o)
    return out


def is_invariant(a: FinitePartialAction, M: Iterable[str]) -> bool:
    M = frozenset(M)
    G = a.groupoid
    for g in G.morphisms:
        for x in a.domain[G.inverse(g)] & M:
            if a.maps[g][x] not in M:
                return False
    return True


def invariant_subsets(a: FinitePartialAction) -> list[frozenset[str]]:
    """All invariant subsets, as unions of orbits, in canonical order."""
    orbs = orbits(a)
    out = []
    for r in range(len(orbs) + 1):
        for combo in itertools.combinations(orbs, r):
            out.append(frozenset().union(*combo))
    return sorted(out, key=subset_key)


def is_minimal(a: FinitePartialAction) -> bool:
    """No invariant subset other than the empty set and X."""
    full = frozenset(a.points)
    return all(M in (frozenset(), full) for M in invariant_subsets(a))


def is_topologically_transitive(a: FinitePartialAction) -> bool:
    """Decided on singletons.

    If U, V are nonempty, pick x in U and y in V; a morphism moving x to y
    witnesses the open-set condition. Conversely the open-set condition
    applied to U={x}, V={y} yields such a morphism. So on a discrete space
    the two formulations agree.
    """
    G = a.groupoid
    for x in a.points:
        reach = {a.maps[g][x] for g in G.morphisms if x in a.domain[G.inverse(g)]}
        if len(reach) != len(a.points):
            return False
    return True


def fixed_points(a: FinitePartialAction, t: str) -> frozenset[str]:
    if t not in a.groupoid.morphisms:
        raise ValidationError(f"unknown morphism {t!r}")
    return frozenset(x for x, y in a.maps[t].items() if x == y)


def _nontrivial_isotropy(G: Groupoid) -> list[str]:
    return [
        t
        for e in G.objects
        for t in sorted(isotropy_group(G, e))
        if t != G.identity(e)
    ]


def is_topologically_free_on(a: FinitePartialAction, F: Iterable[str]) -> bool:
    """Free on F: each non-unit isotropy morphism fixes no point of F.

    Relative interiors in a discrete space are the sets themselves, so the
    interior of the fixed set inside F is empty iff the set is empty.
    """
    F = frozenset(F)
    if not F <= set(a.points):
        raise ValidationError("F is not a subset of X")
    return all(not (fixed_points(a, t) & F) for t in _nontrivial_isotropy(a.groupoid))


def is_topologically_free(a: FinitePartialAction) -> bool:
    return is_topologically_free_on(a, a.points)


def is_residually_topologically_free(a: FinitePartialAction) -> bool:
    return all(is_topologically_free_on(a, F) for F in invariant_subsets(a))


def restrict(a: FinitePartialAction, M: Iterable[str]) -> FinitePartialAction:
    """Restriction to an invariant subset M (domains X_g & M)."""
    M = frozenset(M)
    if not M <= set(a.points):
        raise ValidationError("subset contains unknown points")
    if not is_invariant(a, M):
        raise ValidationError("subset is not invariant")
    G = a.groupoid
    unit = {x: a.unit[x] for x in M}
    domain = {g: a.domain[g] & M for g in G.morphisms}
    maps = {g: {x: y for x, y in a.maps[g].items() if x in M} for g in G.morphisms}
    return FinitePartialAction(G, unit, domain, maps)


# -- random instances ---------------------------------------------------------

_GROUPS = {
    1: [lambda: (["g0"], [["g0"]])],
    2: [lambda: cyclic_group(2)],
    3: [lambda: cyclic_group(3)],
    4: [lambda: cyclic_group(4), klein_group],
    5: [lambda: cyclic_group(5)],
    6: [lambda: cyclic_group(6), symmetric_group_3],
}


def random_groupoid(rng: random.Random, max_morphisms: int) -> Groupoid:
    """Disjoint union of connected components (pair groupoid x group)."""
    budget = max_morphisms
    parts = []
    while budget >= 1 and (not parts or rng.random() < 0.6):
        options = [
            (n, order)
            for n in (1, 2)
            for order in _GROUPS
            if n * n * order <= budget
        ]
        n, order = rng.choice(options)
        elements, table = rng.choice(_GROUPS[order])()
        if n == 1:
            part = from_group(elements, table)
        else:
            part = transitive_groupoid(n, elements, table)
        parts.append(part)
        budget -= len(part)
    if not parts:
        raise ValidationError("bounds admit no groupoid")
    return disjoint_union(*parts)


def _subgroups(G: Groupoid, e: str) -> list[frozenset[str]]:
    H = sorted(isotropy_group(G, e))
    out = []
    for r in range(1, len(H) + 1):
        for combo in itertools.combinations(H, r):
            K = frozenset(combo)
            if G.identity(e) in K and all(G.compose(a, b) in K for a in K for b in K):
                out.append(K)
    return out


def random_global_orbit(rng: random.Random, G: Groupoid, comp: frozenset[str]):
    """A transitive global action: cosets gK with s(g) = base object."""
    base = min(comp)
    K = rng.choice(_subgroups(G, base))
    cosets = []
    for g in G.morphisms:
        if G.src(g) == base:
            c = frozenset(G.compose(g, k) for k in K)
            if c not in cosets:
                cosets.append(c)
    cosets.sort(key=sorted)
    anchor = {i: G.dst(min(c)) for i, c in enumerate(cosets)}

    def act(h, i):
        g = min(cosets[i])
        hg = G.compose(h, g)
        return next(j for j, c in enumerate(cosets) if hg in c)

    return cosets, anchor, act


def random_instance(
    seed: int,
    max_points: int = 3,
    max_morphisms: int = 4,
    max_skew_dim: int | None = None,
    retries: int = 200,
) -> FinitePartialAction:
    """Deterministic random partial action.

    Samples a groupoid and a global action built from transitive orbits,
    restricts it to a random subset of at most max_points points, validates,
    and retries when the skew-ring dimension bound is not met.
    """
    rng = random.Random(seed)
    for _ in range(retries):
        G = random_groupoid(rng, max_morphisms)
        if max_points == 0:
            empty = {g: [] for g in G.morphisms}
            return FinitePartialAction(G, {}, empty, {g: {} for g in G.morphisms})
        # global action: several orbits
        Y_anchor: dict[str, str] = {}
        Y_act: dict[tuple[str, str], str] = {}
        n_orbits = rng.randint(1, max_points)
        for k in range(n_orbits):
            comp = rng.choice(components(G))
            cosets, anchor, act = random_global_orbit(rng, G, comp)
            name = lambda i, k=k: f"y{k}_{i}"
            for i in anchor:
                Y_anchor[name(i)] = anchor[i]
                for h in G.morphisms:
                    if G.src(h) == anchor[i]:
                        Y_act[(h, name(i))] = name(act(h, i))
        Y = sorted(Y_anchor)
        size = rng.randint(1, min(max_points, len(Y)))
        X = set(rng.sample(Y, size))
        domain, maps = {}, {}
        for g in G.morphisms:
            src_pts = [y for y in X if Y_anchor[y] == G.src(g)]
            maps[g] = {y: Y_act[(g, y)] for y in src_pts if Y_act[(g, y)] in X}
            domain[g] = set(maps[g].values())
        rename = {y: f"x{i + 1}" for i, y in enumerate(sorted(X))}
        unit = {rename[y]: Y_anchor[y] for y in X}
        domain = {g: [rename[y] for y in v] for g, v in domain.items()}
        maps = {g: {rename[x]: rename[y] for x, y in m.items()} for g, m in maps.items()}
        a = FinitePartialAction(G, unit, domain, maps)
        if max_skew_dim is None or a.skew_dimension() <= max_skew_dim:
            return a
    raise ValidationError("bounds infeasible after the retry budget")
