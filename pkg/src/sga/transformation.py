"""Transformation groupoid of a partial action and its Steinberg algebra.

Arrows are pairs (t, x) with x in X_{t^-1}, written "(t,x)". The arrow
(t, x) starts at the unit (s(t), x) and ends at (r(t), theta_t(x)), and
(v, y)(t, x) = (vt, x) whenever theta_t(x) = y. Objects are named after
the unit arrows, so x is sent to the object "(e,x)" with e the identity
of the block containing x.

Every property below is decided from the groupoid structure alone, never
by consulting the partial action it came from.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .action import FinitePartialAction
from .errors import ValidationError
from .groupoid import Groupoid, components
from .linalg import rank
from .skew import SkewRing


def arrow_id(t: str, x: str) -> str:
    return f"({t},{x})"


class TransGroupoid:
    def __init__(self, a: FinitePartialAction):
        G = a.groupoid
        self.action = a
        self.pairs: dict[str, tuple[str, str]] = {}
        src, dst, inverse = {}, {}, {}
        for t in G.morphisms:
            for x in sorted(a.domain[G.inverse(t)]):
                y = a.maps[t][x]
                aid = arrow_id(t, x)
                self.pairs[aid] = (t, x)
                src[aid] = arrow_id(G.identity(G.src(t)), x)
                dst[aid] = arrow_id(G.identity(G.dst(t)), y)
                inverse[aid] = arrow_id(G.inverse(t), y)
        objects = sorted(set(src.values()) | set(dst.values()))
        identity = {o: o for o in objects}
        compose = {}
        for g, (v, y) in self.pairs.items():
            for h, (t, x) in self.pairs.items():
                vt = G.compose(v, t)
                if vt is not None and a.maps[t][x] == y:
                    compose[(g, h)] = arrow_id(vt, x)
        self.groupoid = Groupoid(objects, src, dst, identity, inverse, compose)

    def rho(self, x: str) -> str:
        """The unit arrow at x."""
        a = self.action
        return arrow_id(a.groupoid.identity(a.unit[x]), x)

    @property
    def arrows(self) -> tuple[str, ...]:
        return self.groupoid.morphisms

    @property
    def unit_space(self) -> tuple[str, ...]:
        return self.groupoid.objects

    def __len__(self) -> int:
        return len(self.arrows)

    @cached_property
    def factorizations(self) -> dict[str, list[tuple[int, int]]]:
        """h -> index pairs (i, j) with arrows[i] * arrows[j] = h."""
        T = self.groupoid
        out: dict[str, list[tuple[int, int]]] = {h: [] for h in T.morphisms}
        for i, g in enumerate(T.morphisms):
            for j, h in enumerate(T.morphisms):
                gh = T.compose(g, h)
                if gh is not None:
                    out[gh].append((i, j))
        return out


def build(a: FinitePartialAction) -> TransGroupoid:
    return TransGroupoid(a)


# -- groupoid dynamics --------------------------------------------------------


def isotropy_arrows(G: Groupoid) -> frozenset[str]:
    return frozenset(g for g in G.morphisms if G.src(g) == G.dst(g))


def is_effective_groupoid(G: Groupoid) -> bool:
    """Interior of the isotropy equals the unit space (discrete: equality)."""
    return isotropy_arrows(G) == frozenset(G.units)


def invariant_unit_subsets(G: Groupoid) -> list[frozenset[str]]:
    """Unions of orbits, where orbits are the connected components."""
    comps = components(G)
    out = []
    for mask in range(1 << len(comps)):
        out.append(frozenset().union(*(c for i, c in enumerate(comps) if mask >> i & 1)))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def is_invariant_unit_subset(G: Groupoid, D: Iterable[str]) -> bool:
    D = frozenset(D)
    return all(G.dst(g) in D for g in G.morphisms if G.src(g) in D)


def reduction(G: Groupoid, D: Iterable[str]) -> Groupoid:
    """The subgroupoid of arrows with source and range in D."""
    D = frozenset(D)
    keep = [g for g in G.morphisms if G.src(g) in D and G.dst(g) in D]
    return Groupoid(
        sorted(D),
        {g: G.src(g) for g in keep},
        {g: G.dst(g) for g in keep},
        {e: G.identity(e) for e in D},
        {g: G.inverse(g) for g in keep},
        {(g, h): G.compose(g, h) for g in keep for h in keep if G.src(g) == G.dst(h)},
    )


def is_effective(T: TransGroupoid) -> bool:
    return is_effective_groupoid(T.groupoid)


def is_strongly_effective(T: TransGroupoid) -> bool:
    G = T.groupoid
    return all(
        is_effective_groupoid(reduction(G, D)) for D in invariant_unit_subsets(G) if D
    )


def is_minimal_groupoid(T: TransGroupoid) -> bool:
    G = T.groupoid
    full = frozenset(G.objects)
    return all(D in (frozenset(), full) for D in invariant_unit_subsets(G))


def is_topologically_transitive_groupoid(T: TransGroupoid) -> bool:
    """s^-1(U) & r^-1(V) nonempty for all nonempty U, V; singletons suffice."""
    G = T.groupoid
    links = {(G.src(g), G.dst(g)) for g in G.morphisms}
    return all((u, v) in links for u in G.objects for v in G.objects)


# -- Steinberg algebra --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SteinbergElement:
    T: TransGroupoid
    values: np.ndarray
    p: int = 2

    def __post_init__(self):
        if len(self.values) != len(self.T):
            raise ValidationError("coefficient vector length must equal the number of arrows")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SteinbergElement):
            return NotImplemented
        return self.T is other.T and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash(self.values.tobytes())

    def __mul__(self, other: "SteinbergElement") -> "SteinbergElement":
        if other.T is not self.T or other.p != self.p:
            raise ValidationError("elements of different Steinberg algebras")
        return SteinbergElement(self.T, steinberg_multiply(self.T, self, other, self.p), self.p)


def point_mass(T: TransGroupoid, arrow: str) -> np.ndarray:
    v = np.zeros(len(T), dtype=np.int64)
    v[T.groupoid.index(arrow)] = 1
    return v


def unit_indicator(T: TransGroupoid) -> np.ndarray:
    v = np.zeros(len(T), dtype=np.int64)
    for o in T.unit_space:
        v[T.groupoid.index(o)] = 1
    return v


def steinberg_multiply(T: TransGroupoid, f1, f2, p: int = 2) -> np.ndarray:
    """(f1 * f2)(h) = sum over h = h1 h2 of f1(h1) f2(h2)."""
    f1 = np.asarray(getattr(f1, "values", f1), dtype=np.int64)
    f2 = np.asarray(getattr(f2, "values", f2), dtype=np.int64)
    if len(f1) != len(T) or len(f2) != len(T):
        raise ValidationError("element does not belong to this groupoid")
    out = np.zeros(len(T), dtype=np.int64)
    for k, h in enumerate(T.arrows):
        out[k] = sum(int(f1[i]) * int(f2[j]) for i, j in T.factorizations[h]) % p
    return out


def steinberg_iso_matrix(S: SkewRing, T: TransGroupoid) -> np.ndarray:
    """Column for 1_x delta_g is the point mass at (g, theta_{g^-1}(x))."""
    if S.dim != len(T):
        raise ValidationError(f"dimension mismatch: {S.dim} vs {len(T)}")
    a = S.action
    G = a.groupoid
    M = np.zeros((len(T), S.dim), dtype=np.int64)
    for col, (g, x) in enumerate(S.basis):
        M[T.groupoid.index(arrow_id(g, a.maps[G.inverse(g)][x])), col] = 1
    return M


def steinberg_iso(S: SkewRing, T: TransGroupoid):
    M = steinberg_iso_matrix(S, T)
    return lambda s: (M @ s.to_vector()) % S.p


@dataclass
class IsoReport:
    bijective: bool
    multiplicative_pairs: int
    total_pairs: int
    unit_preserving: bool
    witness: tuple[str, str] | None = None

    @property
    def ok(self) -> bool:
        return (
            self.bijective
            and self.unit_preserving
            and self.multiplicative_pairs == self.total_pairs
        )


def check_steinberg_iso(S: SkewRing, T: TransGroupoid) -> IsoReport:
    p = S.p
    M = steinberg_iso_matrix(S, T)
    bijective = rank(M, p) == S.dim if S.dim else True
    good, witness = 0, None
    mons = S.monomials()
    cols = [M[:, i] for i in range(S.dim)]
    for i, a in enumerate(mons):
        for j, b in enumerate(mons):
            lhs = (M @ (a * b).to_vector()) % p
            rhs = steinberg_multiply(T, cols[i], cols[j], p)
            if np.array_equal(lhs, rhs):
                good += 1
            elif witness is None:
                witness = (repr(a), repr(b))
    unit = np.array_equal((M @ S.identity_element().to_vector()) % p, unit_indicator(T))
    return IsoReport(bijective, good, S.dim**2, unit, witness)


def convolution_associative(T: TransGroupoid, triples, p: int = 2) -> bool:
    for f, g, h in triples:
        left = steinberg_multiply(T, steinberg_multiply(T, f, g, p), h, p)
        right = steinberg_multiply(T, f, steinberg_multiply(T, g, h, p), p)
        if not np.array_equal(left, right):
            return False
    return True


def check_CTS(a: FinitePartialAction) -> list[tuple[str, bool, bool]]:
    """Action-side vs groupoid-side flags as (name, action, groupoid) rows."""
    from . import action as act

    T = build(a)
    G = T.groupoid
    rows = [
        ("minimal", act.is_minimal(a), is_minimal_groupoid(T)),
        (
            "topologically-transitive",
            act.is_topologically_transitive(a),
            is_topologically_transitive_groupoid(T),
        ),
        ("topologically-free/effective", act.is_topologically_free(a), is_effective(T)),
        (
            "residually-free/strongly-effective",
            act.is_residually_topologically_free(a),
            is_strongly_effective(T),
        ),
    ]
    images = sorted(
        (frozenset(T.rho(x) for x in F) for F in act.invariant_subsets(a)),
        key=lambda s: (len(s), sorted(s)),
    )
    rows.append(("invariant-subsets-correspond", True, images == invariant_unit_subsets(G)))
    for F in act.invariant_subsets(a):
        D = frozenset(T.rho(x) for x in F)
        rows.append(
            (
                f"free-on {sorted(F)}",
                act.is_topologically_free_on(a, F),
                is_invariant_unit_subset(G, D) and is_effective_groupoid(reduction(G, D)),
            )
        )
    return rows
