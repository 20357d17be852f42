"""Finite groupoids given by explicit composition and inverse tables.

Identifiers are opaque strings. Every enumeration (objects, morphisms,
composable pairs) is in lexicographic order of the identifiers so that
reports are reproducible.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError

MAX_MORPHISMS = 64


class Groupoid:
    """A validated finite groupoid.

    The composition table is fully materialized. Instances are immutable
    after construction; the constructor raises ValidationError on the first
    violated axiom.
    """

    def __init__(
        self,
        objects: Iterable[str],
        src: Mapping[str, str],
        dst: Mapping[str, str],
        identity: Mapping[str, str],
        inverse: Mapping[str, str],
        compose: Mapping[tuple[str, str], str],
    ):
        self.objects: tuple[str, ...] = tuple(sorted(objects))
        self.morphisms: tuple[str, ...] = tuple(sorted(src))
        self._src = dict(src)
        self._dst = dict(dst)
        self._identity = dict(identity)
        self._inverse = dict(inverse)
        self._compose = dict(compose)
        self._check()
        self._index = {g: i for i, g in enumerate(self.morphisms)}
        self._units = frozenset(self._identity.values())
        self._unit_object = {m: o for o, m in self._identity.items()}

    # -- validation -------------------------------------------------------

    def _check(self) -> None:
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise ValidationError("duplicate object identifier")
        if len(self.morphisms) > MAX_MORPHISMS:
            raise ValidationError(
                f"groupoid has {len(self.morphisms)} morphisms; the cap is {MAX_MORPHISMS}"
            )
        if set(self._dst) != set(self._src):
            raise ValidationError("source and range maps have different domains")
        for g in self.morphisms:
            if self._src[g] not in objs or self._dst[g] not in objs:
                raise ValidationError(f"morphism {g!r} has an unknown source or range object")
        if set(self._identity) != objs:
            raise ValidationError("identity map must be defined exactly on the objects")
        for e, u in self._identity.items():
            if u not in self._src:
                raise ValidationError(f"bad identity: {u!r} for object {e!r} is not a morphism")
            if self._src[u] != e or self._dst[u] != e:
                raise ValidationError(f"bad identity: {u!r} is not a loop at {e!r}")
        if set(self._inverse) != set(self.morphisms):
            raise ValidationError("inverse map must be total on morphisms")
        for g, gi in self._inverse.items():
            if gi not in self._src:
                raise ValidationError(f"bad inverse: {gi!r} (inverse of {g!r}) is not a morphism")

        for (g, h), gh in self._compose.items():
            if g not in self._src or h not in self._src:
                raise ValidationError(f"product ({g!r}, {h!r}) names an unknown morphism")
            if self._src[g] != self._dst[h]:
                raise ValidationError(f"non-composable product defined: ({g!r}, {h!r})")
            if gh not in self._src:
                raise ValidationError(f"product {g!r}*{h!r} = {gh!r} is not a morphism")
            if self._src[gh] != self._src[h] or self._dst[gh] != self._dst[g]:
                raise ValidationError(
                    f"product {g!r}*{h!r} = {gh!r} has the wrong source or range"
                )
        for g in self.morphisms:
            for h in self.morphisms:
                if self._src[g] == self._dst[h] and (g, h) not in self._compose:
                    raise ValidationError(f"missing product for composable pair ({g!r}, {h!r})")

        for e, u in self._identity.items():
            for g in self.morphisms:
                if self._dst[g] == e and self._compose[(u, g)] != g:
                    raise ValidationError(f"bad identity: {u!r}*{g!r} != {g!r}")
                if self._src[g] == e and self._compose[(g, u)] != g:
                    raise ValidationError(f"bad identity: {g!r}*{u!r} != {g!r}")

        for g in self.morphisms:
            gi = self._inverse[g]
            if self._src[gi] != self._dst[g] or self._dst[gi] != self._src[g]:
                raise ValidationError(f"bad inverse: {gi!r} cannot invert {g!r}")
            if self._compose[(gi, g)] != self._identity[self._src[g]]:
                raise ValidationError(f"bad inverse: {gi!r}*{g!r} is not an identity")
            if self._compose[(g, gi)] != self._identity[self._dst[g]]:
                raise ValidationError(f"bad inverse: {g!r}*{gi!r} is not an identity")

        for f, g, h in itertools.product(self.morphisms, repeat=3):
            if self._src[f] == self._dst[g] and self._src[g] == self._dst[h]:
                left = self._compose[(self._compose[(f, g)], h)]
                right = self._compose[(f, self._compose[(g, h)])]
                if left != right:
                    raise ValidationError(
                        f"associativity failure on ({f!r}, {g!r}, {h!r}): {left!r} != {right!r}"
                    )

        loops = {self._compose[(g, self._inverse[g])] for g in self.morphisms}
        if loops != set(self._identity.values()):
            raise ValidationError("identity morphisms differ from {g*g^-1}")

    # -- accessors --------------------------------------------------------

    def src(self, g: str) -> str:
        return self._src[g]

    def dst(self, g: str) -> str:
        return self._dst[g]

    def identity(self, e: str) -> str:
        return self._identity[e]

    def inverse(self, g: str) -> str:
        return self._inverse[g]

    def compose(self, g: str, h: str) -> str | None:
        """Return g*h, or None when s(g) != r(h)."""
        return self._compose.get((g, h))

    def is_unit(self, g: str) -> bool:
        return g in self._units

    def unit_object(self, g: str) -> str:
        """Object whose identity morphism is g."""
        return self._unit_object[g]

    @property
    def units(self) -> tuple[str, ...]:
        return tuple(self._identity[e] for e in self.objects)

    def index(self, g: str) -> int:
        return self._index[g]

    def __len__(self) -> int:
        return len(self.morphisms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Groupoid):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash((self.objects, self.morphisms, tuple(sorted(self._compose.items()))))

    def __repr__(self) -> str:
        return f"Groupoid(objects={len(self.objects)}, morphisms={len(self.morphisms)})"

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "objects": list(self.objects),
            "morphisms": [
                {"id": g, "src": self._src[g], "dst": self._dst[g]} for g in self.morphisms
            ],
            "identity": {e: self._identity[e] for e in self.objects},
            "inverse": {g: self._inverse[g] for g in self.morphisms},
            "compose": [[g, h, self._compose[(g, h)]] for g, h in composable_pairs(self)],
        }


def validate(raw: Mapping) -> Groupoid:
    """Build a Groupoid from the JSON description, checking every axiom."""
    try:
        objects = list(raw["objects"])
        morphs = raw["morphisms"]
        identity = dict(raw["identity"])
        inverse = dict(raw["inverse"])
        compose_list = raw["compose"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"groupoid description is missing a field: {exc}") from None
    src, dst = {}, {}
    for m in morphs:
        if m["id"] in src:
            raise ValidationError(f"duplicate morphism identifier {m['id']!r}")
        src[m["id"]] = m["src"]
        dst[m["id"]] = m["dst"]
    compose = {}
    for entry in compose_list:
        g, h, gh = entry
        if (g, h) in compose:
            raise ValidationError(f"product ({g!r}, {h!r}) listed twice")
        compose[(g, h)] = gh
    return Groupoid(objects, src, dst, identity, inverse, compose)


def isotropy_group(G: Groupoid, e: str) -> frozenset[str]:
    """G_e^e: morphisms with source and range both equal to e."""
    if e not in G.objects:
        raise ValidationError(f"unknown object {e!r}")
    return frozenset(g for g in G.morphisms if G.src(g) == e and G.dst(g) == e)


def composable_pairs(G: Groupoid) -> list[tuple[str, str]]:
    return [(g, h) for g in G.morphisms for h in G.morphisms if G.src(g) == G.dst(h)]


def components(G: Groupoid) -> list[frozenset[str]]:
    """Connected components as sets of objects."""
    parent = {e: e for e in G.objects}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for g in G.morphisms:
        a, b = find(G.src(g)), find(G.dst(g))
        if a != b:
            parent[max(a, b)] = min(a, b)
    blocks: dict[str, set[str]] = {}
    for e in G.objects:
        blocks.setdefault(find(e), set()).add(e)
    return sorted((frozenset(b) for b in blocks.values()), key=sorted)


# -- constructors -------------------------------------------------------------


def from_group(elements: Sequence[str], cayley_table: Sequence[Sequence[str]]) -> Groupoid:
    """One-object groupoid of a group given by its Cayley table.

    cayley_table[i][j] is elements[i]*elements[j]. The single object is
    named after the identity element.
    """
    elements = list(elements)
    n = len(elements)
    if n == 0 or len(set(elements)) != n:
        raise ValidationError("group elements must be nonempty and distinct")
    if len(cayley_table) != n or any(len(row) != n for row in cayley_table):
        raise ValidationError("Cayley table has the wrong shape")
    mul = {(a, b): cayley_table[i][j] for i, a in enumerate(elements) for j, b in enumerate(elements)}
    if any(v not in elements for v in mul.values()):
        raise ValidationError("Cayley table is not closed")
    ident = [e for e in elements if all(mul[(e, a)] == a == mul[(a, e)] for a in elements)]
    if not ident:
        raise ValidationError("table has no identity element")
    e = ident[0]
    for a, b, c in itertools.product(elements, repeat=3):
        if mul[(mul[(a, b)], c)] != mul[(a, mul[(b, c)])]:
            raise ValidationError(f"table is not associative at ({a!r}, {b!r}, {c!r})")
    inverse = {}
    for a in elements:
        inv = [b for b in elements if mul[(a, b)] == e and mul[(b, a)] == e]
        if not inv:
            raise ValidationError(f"element {a!r} has no inverse")
        inverse[a] = inv[0]
    src = {a: e for a in elements}
    return Groupoid([e], src, dict(src), {e: e}, inverse, mul)


def cyclic_group(n: int, name: str = "g") -> tuple[list[str], list[list[str]]]:
    """Elements and Cayley table of Z_n; element k is named f"{name}{k}"."""
    els = [f"{name}{k}" for k in range(n)]
    return els, [[els[(i + j) % n] for j in range(n)] for i in range(n)]


def klein_group() -> tuple[list[str], list[list[str]]]:
    els = ["v00", "v01", "v10", "v11"]
    bits = [(0, 0), (0, 1), (1, 0), (1, 1)]
    table = [
        [els[bits.index(((a[0] + b[0]) % 2, (a[1] + b[1]) % 2))] for b in bits] for a in bits
    ]
    return els, table


def symmetric_group_3() -> tuple[list[str], list[list[str]]]:
    perms = sorted(itertools.permutations(range(3)))
    els = ["s" + "".join(map(str, p)) for p in perms]
    table = [
        [els[perms.index(tuple(p[q[i]] for i in range(3)))] for q in perms] for p in perms
    ]
    return els, table


def pair_groupoid(n: int) -> Groupoid:
    """Objects 0..n-1 with exactly one morphism (i,j): j -> i for each pair."""
    if n < 1:
        raise ValidationError("pair groupoid needs at least one object")
    objs = [str(i) for i in range(n)]
    name = {(i, j): f"({i},{j})" for i in range(n) for j in range(n)}
    src = {name[(i, j)]: str(j) for i, j in name}
    dst = {name[(i, j)]: str(i) for i, j in name}
    compose = {
        (name[(i, j)], name[(j, k)]): name[(i, k)]
        for i in range(n)
        for j in range(n)
        for k in range(n)
    }
    inverse = {name[(i, j)]: name[(j, i)] for i, j in name}
    identity = {str(i): name[(i, i)] for i in range(n)}
    return Groupoid(objs, src, dst, identity, inverse, compose)


def transitive_groupoid(n: int, elements: Sequence[str], cayley_table) -> Groupoid:
    """Connected groupoid on n objects with isotropy the given group.

    Realized as the product of the pair groupoid on n objects with the
    group; morphisms are named f"({i},{j}){a}".
    """
    grp = from_group(elements, cayley_table)
    pair = pair_groupoid(n)
    src, dst, inverse, compose = {}, {}, {}, {}
    name = {(p, a): f"{p}{a}" for p in pair.morphisms for a in grp.morphisms}
    for (p, a), nm in name.items():
        src[nm] = pair.src(p)
        dst[nm] = pair.dst(p)
        inverse[nm] = name[(pair.inverse(p), grp.inverse(a))]
    for (p, a), (q, b) in itertools.product(name, repeat=2):
        pq = pair.compose(p, q)
        if pq is not None:
            compose[(name[(p, a)], name[(q, b)])] = name[(pq, grp.compose(a, b))]
    unit = grp.objects[0]
    identity = {e: name[(pair.identity(e), unit)] for e in pair.objects}
    return Groupoid(pair.objects, src, dst, identity, inverse, compose)


def disjoint_union(*parts: Groupoid, prefixes: Sequence[str] | None = None) -> Groupoid:
    """Disjoint union; identifiers are renamed to f"{prefix}.{id}"."""
    if prefixes is None:
        prefixes = [chr(ord("A") + i) for i in range(len(parts))]
    objects, src, dst, identity, inverse, compose = [], {}, {}, {}, {}, {}
    for pre, G in zip(prefixes, parts):
        r = lambda x, pre=pre: f"{pre}.{x}"
        objects += [r(e) for e in G.objects]
        for g in G.morphisms:
            src[r(g)] = r(G.src(g))
            dst[r(g)] = r(G.dst(g))
            inverse[r(g)] = r(G.inverse(g))
        for e in G.objects:
            identity[r(e)] = r(G.identity(e))
        for g, h in composable_pairs(G):
            compose[(r(g), r(h))] = r(G.compose(g, h))
    return Groupoid(objects, src, dst, identity, inverse, compose)


def trivial_groupoid(objects: Sequence[str]) -> Groupoid:
    """Only identity morphisms; each object's identity shares its name."""
    objs = list(objects)
    m = {e: e for e in objs}
    return Groupoid(objs, m, m, m, m, {(e, e): e for e in objs})


def automorphisms(G: Groupoid) -> list[dict[str, str]]:
    """All morphism permutations preserving composition (brute force)."""
    result = []
    morphs = G.morphisms
    pairs = composable_pairs(G)
    units = set(G.units)
    for perm in itertools.permutations(morphs):
        f = dict(zip(morphs, perm))
        if any(f[u] not in units for u in units):
            continue
        ok = True
        for g, h in pairs:
            if G.compose(f[g], f[h]) != f[G.compose(g, h)]:
                ok = False
                break
        if ok:
            # composability must be preserved in both directions
            image_pairs = {(f[g], f[h]) for g, h in pairs}
            if image_pairs == set(pairs):
                result.append(f)
    return result
