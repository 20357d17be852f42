"""Finite ultragraphs: generalized vertices, loops, exits, Condition (K).

A simple loop at v is a path e_1 ... e_n with s(e_1) = v, v in r(e_n) and
s(e_i) != v for i >= 2. Inner sources other than v may repeat, so a
simple loop is not a simple cycle and there can be infinitely many.

Infinite words u gamma^inf are compared on a finite prefix: past |u| both
u gamma^inf and gamma^inf are |gamma|-periodic, so agreement on one extra
full period forces agreement everywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ValidationError

NONE, ONE, MANY = "none", "one", "many"


class Ultragraph:
    def __init__(self, vertices: Iterable[str], edges: Mapping[str, tuple[str, Iterable[str]]]):
        self.vertices: tuple[str, ...] = tuple(sorted(vertices))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex identifier")
        vs = set(self.vertices)
        self.src: dict[str, str] = {}
        self.rng: dict[str, frozenset[str]] = {}
        for e in sorted(edges):
            s, r = edges[e]
            r = frozenset(r)
            if s not in vs:
                raise ValidationError(f"edge {e!r} has unknown source {s!r}")
            if not r:
                raise ValidationError(f"edge {e!r} has empty range")
            if not r <= vs:
                raise ValidationError(f"edge {e!r} has unknown range vertices {sorted(r - vs)}")
            self.src[e] = s
            self.rng[e] = r
        self.edges: tuple[str, ...] = tuple(sorted(self.src))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ultragraph):
            return NotImplemented
        return (self.vertices, self.src, self.rng) == (other.vertices, other.src, other.rng)

    def __repr__(self) -> str:
        return f"Ultragraph(vertices={len(self.vertices)}, edges={len(self.edges)})"

    def out_edges(self, v: str) -> list[str]:
        return [e for e in self.edges if self.src[e] == v]

    def sinks(self) -> frozenset[str]:
        return frozenset(v for v in self.vertices if not self.out_edges(v))

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"id": e, "source": self.src[e], "range": sorted(self.rng[e])} for e in self.edges
            ],
        }


def validate(raw: Mapping) -> Ultragraph:
    try:
        vertices = list(raw["vertices"])
        edges = {}
        for item in raw["edges"]:
            if item["id"] in edges:
                raise ValidationError(f"duplicate edge identifier {item['id']!r}")
            edges[item["id"]] = (item["source"], list(item["range"]))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"ultragraph description is missing a field: {exc}") from None
    return Ultragraph(vertices, edges)


def fix_u1() -> Ultragraph:
    return Ultragraph(["v"], {"e": ("v", ["v"])})


def fix_u2() -> Ultragraph:
    return Ultragraph(["v"], {"e": ("v", ["v"]), "f": ("v", ["v"])})


def fix_u3() -> Ultragraph:
    return Ultragraph(["v", "w"], {"e": ("v", ["v", "w"]), "f": ("w", ["v"])})


ULTRAGRAPHS = {"FIX-U1": fix_u1, "FIX-U2": fix_u2, "FIX-U3": fix_u3}


# -- vertex-set families ------------------------------------------------------


@dataclass(frozen=True)
class VertexSetFamily:
    sets: tuple[frozenset[str], ...]
    relative_complements: bool

    def __contains__(self, A) -> bool:
        return frozenset(A) in self.sets

    def __len__(self) -> int:
        return len(self.sets)


def _closure(U: Ultragraph, with_complements: bool) -> VertexSetFamily:
    fam = {frozenset()} | {frozenset([v]) for v in U.vertices} | set(U.rng.values())
    while True:
        cur = list(fam)
        new = set()
        for A in cur:
            for B in cur:
                new.add(A | B)
                new.add(A & B)
                if with_complements:
                    new.add(A - B)
        if new <= fam:
            break
        fam |= new
    ordered = tuple(sorted(fam, key=lambda s: (len(s), sorted(s))))
    return VertexSetFamily(ordered, with_complements)


def generalized_vertices(U: Ultragraph) -> VertexSetFamily:
    return _closure(U, False)


def accommodating_family(U: Ultragraph) -> VertexSetFamily:
    return _closure(U, True)


# -- paths --------------------------------------------------------------------


def is_path(U: Ultragraph, alpha: Sequence[str]) -> bool:
    if any(e not in U.src for e in alpha):
        return False
    return all(U.src[b] in U.rng[a] for a, b in zip(alpha, alpha[1:]))


def is_loop(U: Ultragraph, alpha: Sequence[str]) -> bool:
    return bool(alpha) and is_path(U, alpha) and U.src[alpha[0]] in U.rng[alpha[-1]]


def _require_path(U: Ultragraph, alpha: Sequence[str]) -> None:
    if not is_path(U, alpha):
        raise ValidationError(f"{list(alpha)} is not a path")


def _require_loop(U: Ultragraph, alpha: Sequence[str]) -> None:
    if not is_loop(U, alpha):
        raise ValidationError(f"{list(alpha)} is not a loop")


def relative_range(U: Ultragraph, A: Iterable[str], alpha: Sequence[str]) -> frozenset[str]:
    """r(A, e) = r(e) if s(e) in A else empty, iterated along alpha."""
    _require_path(U, alpha)
    cur = frozenset(A)
    for e in alpha:
        cur = U.rng[e] if U.src[e] in cur else frozenset()
    return cur


def simple_loop_count_at(U: Ultragraph, v: str) -> str:
    """NONE, ONE or MANY simple loops based at v."""
    if v not in U.vertices:
        raise ValidationError(f"unknown vertex {v!r}")
    succ = {
        e: [f for f in U.edges if U.src[f] in U.rng[e] and U.src[f] != v] for e in U.edges
    }
    initial = [e for e in U.edges if U.src[e] == v]
    accepting = {e for e in U.edges if v in U.rng[e]}

    reach = set(initial)
    stack = list(initial)
    while stack:
        for f in succ[stack.pop()]:
            if f not in reach:
                reach.add(f)
                stack.append(f)
    pred: dict[str, list[str]] = {e: [] for e in U.edges}
    for e, fs in succ.items():
        for f in fs:
            pred[f].append(e)
    coreach = set(accepting)
    stack = list(accepting)
    while stack:
        for e in pred[stack.pop()]:
            if e not in coreach:
                coreach.add(e)
                stack.append(e)
    useful = reach & coreach
    if not useful:
        return NONE

    # a cycle among useful edges yields infinitely many simple loops
    color: dict[str, int] = {}

    def has_cycle(e: str) -> bool:
        color[e] = 1
        for f in succ[e]:
            if f not in useful:
                continue
            if color.get(f) == 1 or (f not in color and has_cycle(f)):
                return True
        color[e] = 2
        return False

    if any(e not in color and has_cycle(e) for e in sorted(useful)):
        return MANY

    memo: dict[str, int] = {}

    def walks_from(e: str) -> int:
        if e not in memo:
            n = 1 if e in accepting else 0
            for f in succ[e]:
                if f in useful:
                    n += walks_from(f)
            memo[e] = min(n, 2)
        return memo[e]

    total = min(sum(walks_from(e) for e in initial if e in useful), 2)
    return (NONE, ONE, MANY)[total]


def condition_K(U: Ultragraph) -> tuple[bool, dict[str, str]]:
    per_vertex = {v: simple_loop_count_at(U, v) for v in U.vertices}
    return all(c != ONE for c in per_vertex.values()), per_vertex


def exits_of_loop(U: Ultragraph, gamma: Sequence[str]) -> list[tuple]:
    """("edge", i, e) with s(e) in r(gamma_i), e != gamma_{i+1}; ("sink", i, w) for sinks in r(gamma_i)."""
    _require_loop(U, gamma)
    n = len(gamma)
    sinks = U.sinks()
    out = []
    for i, g in enumerate(gamma):
        nxt = gamma[(i + 1) % n]
        for e in U.edges:
            if U.src[e] in U.rng[g] and e != nxt:
                out.append(("edge", i + 1, e))
        for w in sorted(U.rng[g] & sinks):
            out.append(("sink", i + 1, w))
    return out


# -- recurrence ---------------------------------------------------------------


def word_prefix(u: Sequence[str], gamma: Sequence[str], length: int) -> tuple[str, ...]:
    """First ``length`` letters of u gamma gamma gamma ..."""
    out = list(u[:length])
    i = 0
    while len(out) < length:
        out.append(gamma[i % len(gamma)])
        i += 1
    return tuple(out)


def is_recurrent(U: Ultragraph, gamma: Sequence[str], rho: Sequence[str]) -> bool:
    """True iff gamma rho gamma^inf differs from gamma^inf (rho witnesses recurrence)."""
    _require_loop(U, gamma)
    _require_loop(U, rho)
    if U.src[gamma[0]] != U.src[rho[0]]:
        raise ValidationError("gamma and rho start at different vertices")
    u = list(gamma) + list(rho)
    n = len(u) + len(gamma)
    return word_prefix(u, gamma, n) != word_prefix([], gamma, n)


def _return_distance(U: Ultragraph, v: str) -> dict[str, int]:
    """Fewest edges, counting e itself, on a path from e to an edge whose range holds v."""
    INF = float("inf")
    dist = {e: (1 if v in U.rng[e] else INF) for e in U.edges}
    for _ in range(len(U.edges)):
        for e in U.edges:
            for f in U.edges:
                if U.src[f] in U.rng[e] and dist[f] + 1 < dist[e]:
                    dist[e] = dist[f] + 1
    return dist


def loops_at(U: Ultragraph, v: str, max_len: int) -> Iterator[tuple[str, ...]]:
    """Loops based at v of length <= max_len, shortest first within each branch."""
    dist = _return_distance(U, v)

    def extend(path: list[str]) -> Iterator[tuple[str, ...]]:
        last = path[-1]
        if v in U.rng[last]:
            yield tuple(path)
        if len(path) == max_len:
            return
        for f in U.edges:
            if U.src[f] in U.rng[last] and len(path) + dist[f] <= max_len:
                path.append(f)
                yield from extend(path)
                path.pop()

    for e in U.out_edges(v):
        if dist[e] <= max_len:
            yield from extend([e])


def loop_counts_by_length(U: Ultragraph, v: str, max_len: int, cap: int = 2) -> list[int]:
    """counts[m] = number of loops at v of length m, capped at ``cap``."""
    counts = [0] * (max_len + 1)
    ways = {e: (1 if U.src[e] == v else 0) for e in U.edges}
    for m in range(1, max_len + 1):
        counts[m] = min(sum(c for e, c in ways.items() if v in U.rng[e]), cap)
        nxt = {f: 0 for f in U.edges}
        for e, c in ways.items():
            if c:
                for f in U.edges:
                    if U.src[f] in U.rng[e]:
                        nxt[f] = min(nxt[f] + c, cap)
        ways = nxt
    return counts


def default_max_len(U: Ultragraph, gamma: Sequence[str]) -> int:
    return len(gamma) * len(U.edges) + len(U.edges)


def is_recurrent_any(U: Ultragraph, gamma: Sequence[str], max_len: int | None = None) -> bool:
    """Some loop rho at s(gamma) with |rho| <= max_len witnesses recurrence."""
    _require_loop(U, gamma)
    if max_len is None:
        max_len = default_max_len(U, gamma)
    if max_len < 1:
        raise ValidationError("max_len must be at least 1")
    v = U.src[gamma[0]]
    return any(is_recurrent(U, gamma, rho) for rho in loops_at(U, v, max_len))


@dataclass
class KRReport:
    condition_K: bool
    bounded_all_recurrent: bool
    per_vertex: dict[str, dict] = field(default_factory=dict)
    discrepancies: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.discrepancies

    def to_dict(self) -> dict:
        return {
            "condition_K": self.condition_K,
            "bounded_all_recurrent": self.bounded_all_recurrent,
            "consistent": self.consistent,
            "discrepancies": self.discrepancies,
            "per_vertex": self.per_vertex,
        }


def _vertex_all_recurrent(U: Ultragraph, v: str, max_len: int) -> tuple[bool, str, tuple | None]:
    """Whether every loop at v of length <= max_len has a witness of length <= max_len.

    Certificate: two distinct loops rho1, rho2 at v of a common length m
    cannot both equal the length-m prefix of gamma^inf, so one of them
    witnesses recurrence for every loop gamma at v. Without such a pair
    there is at most one loop per length, and they are enumerated.
    """
    counts = loop_counts_by_length(U, v, max_len)
    if any(c >= 2 for c in counts):
        return True, "two loops of equal length", None
    loops = list(loops_at(U, v, max_len))
    for gamma in loops:
        if not any(is_recurrent(U, gamma, rho) for rho in loops):
            return False, "enumerated", gamma
    return True, "enumerated", None


def check_KR(U: Ultragraph, max_len: int = 12) -> KRReport:
    k, counts = condition_K(U)
    per_vertex = {}
    bounded = True
    for v in U.vertices:
        ok, how, witness = _vertex_all_recurrent(U, v, max_len)
        bounded &= ok
        per_vertex[v] = {
            "simple_loops": counts[v],
            "all_loops_recurrent": ok,
            "method": how,
            "transitory_loop": list(witness) if witness else None,
        }
    report = KRReport(k, bounded, per_vertex)
    if k != bounded:
        report.discrepancies.append(
            f"condition K is {k} but bounded recurrence search (max_len={max_len}) gives {bounded}"
        )
    return report


# -- random instances ---------------------------------------------------------


def random_ultragraph(seed: int, max_vertices: int = 6, max_edges: int = 8) -> Ultragraph:
    rng = random.Random(seed)
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_edges)
    vs = [f"v{i}" for i in range(1, n + 1)]
    edges = {}
    for j in range(1, m + 1):
        size = rng.randint(1, n)
        edges[f"e{j}"] = (rng.choice(vs), rng.sample(vs, size))
    return Ultragraph(vs, edges)


def relabel(U: Ultragraph, vmap: Mapping[str, str], emap: Mapping[str, str]) -> Ultragraph:
    return Ultragraph(
        [vmap[v] for v in U.vertices],
        {emap[e]: (vmap[U.src[e]], [vmap[w] for w in U.rng[e]]) for e in U.edges},
    )
