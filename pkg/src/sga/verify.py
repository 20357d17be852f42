"""Per-instance machine verification of the equivalence theorems.

Each check computes every side of an equivalence from a different module:
dynamics from ``action``, invariant ideals of R from ``fnalgebra``, ring
properties from the ideal enumeration in ``ideals``, and groupoid
properties from ``transformation``. A check passes when all sides agree
(or, for implications, when the implication holds). Checks that need the
full ideal lattice are reported as skipped above the dimension cap.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import action as act
from . import fnalgebra as fa
from . import ideals as idl
from . import stone
from . import transformation as tg
from .action import FinitePartialAction
from .errors import CapExceeded
from .linalg import Subspace
from .skew import SkewRing, quotient_skew_ring
from .ultragraph import Ultragraph, check_KR

SUITES = ("ideal", "dynamics", "steinberg", "stone", "ultragraph", "all")
PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class CheckResult:
    tag: str
    status: str
    sides: dict[str, Any] = field(default_factory=dict)
    witness: str | None = None
    elapsed: float = 0.0

    def to_dict(self, timings: bool = False) -> dict:
        out = {"tag": self.tag, "status": self.status, "sides": self.sides, "witness": self.witness}
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass
class VerificationReport:
    fingerprint: str
    checks: list[CheckResult]

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def status_of(self, tag: str) -> str:
        return next(c.status for c in self.checks if c.tag == tag)

    def to_dict(self, timings: bool = False) -> dict:
        counts = {s: sum(c.status == s for c in self.checks) for s in (PASS, FAIL, SKIPPED)}
        return {
            "fingerprint": self.fingerprint,
            "summary": counts,
            "checks": [c.to_dict(timings) for c in self.checks],
        }


def fingerprint(instance, p: int | None = None) -> str:
    doc = {"instance": instance.to_dict(), "p": p}
    blob = json.dumps(doc, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


class _Skip(Exception):
    pass


class _Context:
    """Lazily computed objects shared by the checks of one instance."""

    def __init__(self, a: FinitePartialAction, p: int, max_dim: int | None, samples: int):
        self.a = a
        self.p = p
        self.max_dim = max_dim
        self.samples = samples
        self.rng = random.Random(fingerprint(a, p))
        self._cache: dict[str, Any] = {}

    def get(self, key: str, fn: Callable[[], Any]):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def S(self) -> SkewRing:
        return self.get("S", lambda: SkewRing.of(self.a, self.p))

    @property
    def T(self) -> tg.TransGroupoid:
        return self.get("T", lambda: tg.build(self.a))

    def ideals(self, S: SkewRing | None = None) -> list[Subspace]:
        S = self.S if S is None else S
        key = f"ideals:{id(S)}"

        def compute():
            try:
                return idl.all_ideals(S, self.max_dim)
            except CapExceeded as exc:
                return exc

        res = self.get(key, compute)
        if isinstance(res, CapExceeded):
            raise _Skip(str(res))
        return res

    def quotient(self, U) -> SkewRing:
        U = frozenset(U)
        return self.get(f"quot:{sorted(U)}", lambda: quotient_skew_ring(self.S, U).quotient)

    @property
    def invariant_supports(self) -> list[frozenset[str]]:
        """From the function algebra, not from orbits."""
        return self.get("inv", lambda: idl.invariant_supports(self.S))

    def nonempty_space(self) -> None:
        if not self.a.points:
            raise _Skip("empty space: the zero ring is neither simple nor prime by convention")

    # independent property evaluations

    def residual_ip(self) -> bool:
        return all(
            idl.has_intersection_property(Q, self.ideals(Q))
            for Q in (self.quotient(U) for U in self.invariant_supports)
        )

    def graded_from_enumeration(self) -> list[Subspace]:
        return [I for I in self.ideals() if idl.is_graded_ideal(self.S, I)]


def _agree(**sides) -> tuple[bool, dict]:
    vals = list(sides.values())
    return all(v == vals[0] for v in vals), sides


# -- ideal suite --------------------------------------------------------------


def _graded_correspondence(c: _Context):
    S = c.S
    enumerated = sorted(c.graded_from_enumeration())
    psi_images = sorted(idl.Psi(S, U) for U in c.invariant_supports)
    problems = []
    if enumerated != psi_images:
        problems.append("graded ideals from enumeration differ from Psi-images")
    for U in c.invariant_supports:
        P = idl.Psi(S, U)
        if not idl.is_two_sided(S, P) or not idl.is_graded_ideal(S, P):
            problems.append(f"Psi({sorted(U)}) is not a graded ideal")
        if idl.Phi(S, P) != U:
            problems.append(f"Phi(Psi({sorted(U)})) != {sorted(U)}")
    for I in enumerated:
        if idl.Psi(S, idl.Phi(S, I)) != I:
            problems.append(f"Psi(Phi(I)) != I for an ideal of dim {I.dim}")
    sides = {"graded_ideals": len(enumerated), "invariant_ideals": len(c.invariant_supports)}
    return not problems, sides, "; ".join(problems) or None


def _graded_iff_residual(c: _Context):
    S = c.S
    ideals = c.ideals()
    phi_images = [idl.Phi(S, I) for I in ideals]
    phi_bijective = len(set(phi_images)) == len(ideals) and set(phi_images) == set(
        c.invariant_supports
    )
    return _agree(
        phi_bijective=phi_bijective,
        all_ideals_graded=all(idl.is_graded_ideal(S, I) for I in ideals),
        residual_intersection_property=c.residual_ip(),
    ) + (None,)


def _quotient_maximal_commutative(c: _Context):
    return _agree(
        diagonal_max_commutative_in_every_quotient=all(
            idl.is_A_maximal_commutative(c.quotient(U)) for U in c.invariant_supports
        ),
        residual_intersection_property=c.residual_ip(),
        all_ideals_graded=all(idl.is_graded_ideal(c.S, I) for I in c.ideals()),
    ) + (None,)


def _ip_vs_max_commutative(c: _Context):
    bad = []
    for U in c.invariant_supports:
        Q = c.quotient(U)
        ip = idl.has_intersection_property(Q, c.ideals(Q))
        mc = idl.is_A_maximal_commutative(Q)
        if ip != mc:
            bad.append(f"quotient by {sorted(U)}: IP={ip}, maxcomm={mc}")
    S = c.S
    sides = {
        "intersection_property": idl.has_intersection_property(S, c.ideals()),
        "diagonal_max_commutative": idl.is_A_maximal_commutative(S),
    }
    return not bad and len(set(sides.values())) == 1, sides, "; ".join(bad) or None


def _graded_simple(c: _Context):
    c.nonempty_space()
    graded = c.graded_from_enumeration()
    return _agree(
        graded_simple=c.S.dim > 0 and len(graded) == 2,
        G_simple=fa.is_G_simple(c.S.A),
    ) + (None,)


def _graded_prime(c: _Context):
    c.nonempty_space()
    return _agree(
        graded_prime=idl.is_prime(c.S, c.graded_from_enumeration()),
        G_prime=fa.is_G_prime(c.S.A),
    ) + (None,)


def _prime_implies_G_prime(c: _Context):
    c.nonempty_space()
    prime = idl.is_prime(c.S, c.ideals())
    gp = fa.is_G_prime(c.S.A)
    return (not prime) or gp, {"prime": prime, "G_prime": gp}, None


def _prime_under_ip(c: _Context):
    c.nonempty_space()
    ip = idl.has_intersection_property(c.S, c.ideals())
    prime = idl.is_prime(c.S, c.ideals())
    gp = fa.is_G_prime(c.S.A)
    return (not ip) or prime == gp, {"intersection_property": ip, "prime": prime, "G_prime": gp}, None


def _simple_criterion(c: _Context):
    c.nonempty_space()
    ip = idl.has_intersection_property(c.S, c.ideals())
    return _agree(
        simple=idl.is_simple(c.S, c.ideals()),
        G_simple_and_intersection_property=fa.is_G_simple(c.S.A) and ip,
    ) + (None,)


def _hull_and_core(c: _Context):
    S, A = c.S, c.S.A
    bad = []
    for n, I in enumerate(c.ideals()):
        p0_image = Subspace.span(
            [A.vector(S.p0(S.from_vector(v))) for v in I.rows], A.dim, A.p
        ) if I.dim else Subspace.zero(A.dim, A.p)
        J = fa.support_of_ideal(A, p0_image)
        J0 = idl.Phi(S, I)
        if not fa.is_invariant_ideal(A, fa.ideal_from_open(A, J)):
            bad.append(f"ideal {n}: P0(I) not invariant")
        if not I <= idl.Psi(S, J):
            bad.append(f"ideal {n}: I not inside Psi(P0(I))")
        if not idl.Psi(S, J0) <= I:
            bad.append(f"ideal {n}: Psi(J0) not inside I")
        if idl.diagonal_ideal_of(S, I) != idl.Psi(S, J0):
            bad.append(f"ideal {n}: S I0 S != Psi(J0)")
        if not idl.unit_components_in(S, I):
            bad.append(f"ideal {n}: unit component of I & A escapes I")
    return not bad, {"ideals": len(c.ideals())}, "; ".join(bad) or None


def random_element(rng: random.Random, S: SkewRing, diagonal: bool = False):
    v = np.array([rng.randrange(S.p) for _ in range(S.dim)], dtype=np.int64)
    if diagonal:
        mask = np.zeros(S.dim, dtype=bool)
        mask[S.unit_indices()] = True
        v[~mask] = 0
    return S.from_vector(v)


def expectation_identity_failures(S: SkewRing, rng: random.Random, pairs: int) -> list[str]:
    """P0 and E against A on random pairs (a in A, b in S); returns witnesses."""
    bad = []
    for k in range(pairs):
        a = random_element(rng, S, diagonal=True)
        b = random_element(rng, S)
        if S.p0(a * b) != S.p0(a) * S.p0(b) or S.p0(b * a) != S.p0(b) * S.p0(a):
            bad.append(f"P0 multiplicativity fails at sample {k}")
        if S.E(a) != a or S.E(a * b) != a * S.E(b) or S.E(b * a) != S.E(b) * a:
            bad.append(f"E bimodule identity fails at sample {k}")
        if S.p0(S.psi(S.p0(a))) != S.p0(a) or S.psi(S.p0(a)) != a:
            bad.append(f"psi is not inverse to P0 on A at sample {k}")
        if bad:
            break
    return bad


def local_units_failures_on_functions(A: fa.InducedAction) -> list[str]:
    """(I+J) & (K+J) = (I&K)+J over every triple of ideals of K^X."""
    bad = []
    subsets = fa.all_subsets(A.points)
    spaces = [fa.ideal_from_open(A, U) for U in subsets]
    for (U, I), (V, J), (W, K) in itertools.product(zip(subsets, spaces), repeat=3):
        if not idl.local_units_identity(I, J, K):
            bad.append(f"triple {sorted(U)}, {sorted(V)}, {sorted(W)}")
    return bad


def local_units_failures_in_ring(S: SkewRing, rng: random.Random, triples: int) -> list[str]:
    """Random principal I, J and an s-unital graded K."""
    if not S.dim:
        return []
    supports = idl.invariant_supports(S)
    for k in range(triples):
        I = idl.ideal_generated_by(S, [random_element(rng, S)])
        J = idl.ideal_generated_by(S, [random_element(rng, S)])
        K = idl.Psi(S, rng.choice(supports))  # unital, hence s-unital
        if not idl.local_units_identity(I, J, K):
            return [f"random triple {k}"]
    return []


def _expectation_identities(c: _Context):
    bad = expectation_identity_failures(c.S, c.rng, c.samples)
    return not bad, {"samples": c.samples}, "; ".join(bad) or None


def _skew_structure(c: _Context):
    S = c.S
    one = S.identity_element()
    problems = []
    if not S.check_associative():
        problems.append("not associative on monomials")
    if not S.check_graded():
        problems.append("grading violated")
    if any(one * m != m or m * one != m for m in S.monomials()):
        problems.append("identity element is not a unit")
    for k in range(min(c.samples, 200)):
        a, b = random_element(c.rng, S), random_element(c.rng, S)
        if not np.array_equal((a * b).to_vector(), S.multiply_fast(a.to_vector(), b.to_vector())):
            problems.append(f"table product differs from rule at sample {k}")
            break
    diag = S.diagonal()
    for u in diag.rows:
        for w in diag.rows:
            if S.multiply_fast(u, w).tolist() != S.multiply_fast(w, u).tolist():
                problems.append("diagonal is not commutative")
    return not problems, {"dimension": S.dim}, "; ".join(problems) or None


def _exact_sequences(c: _Context):
    bad = [
        sorted(U)
        for U in c.invariant_supports
        if not quotient_skew_ring(c.S, U).check_exact() or not fa.check_quotient_iso(c.S.A, U)
    ]
    return not bad, {"invariant_ideals": len(c.invariant_supports)}, (
        f"quotients by {bad}" if bad else None
    )


def _local_units(c: _Context):
    bad = local_units_failures_on_functions(c.S.A)
    bad += local_units_failures_in_ring(c.S, c.rng, c.samples)
    return not bad, {"samples": c.samples}, "; ".join(bad[:3]) or None


# -- dynamics suite -----------------------------------------------------------


def _minimal_vs_G_simple(c: _Context):
    c.nonempty_space()
    return _agree(minimal=act.is_minimal(c.a), G_simple=fa.is_G_simple(c.S.A)) + (None,)


def _transitive_vs_G_prime(c: _Context):
    c.nonempty_space()
    return _agree(
        topologically_transitive=act.is_topologically_transitive(c.a),
        G_prime=fa.is_G_prime(c.S.A),
    ) + (None,)


def _free_on_F(c: _Context):
    bad = []
    X = frozenset(c.a.points)
    for F in act.invariant_subsets(c.a):
        free = act.is_topologically_free_on(c.a, F)
        # quotient by the ideal of functions vanishing on F is supported on X \ F
        mc = idl.is_A_maximal_commutative(c.quotient(X - F))
        if free != mc:
            bad.append(f"F={sorted(F)}: free={free}, maxcomm={mc}")
    return not bad, {"invariant_subsets": len(act.invariant_subsets(c.a))}, "; ".join(bad) or None


def _residual_freeness(c: _Context):
    X = frozenset(c.a.points)
    open_side = all(act.is_topologically_free_on(c.a, U) for U in act.invariant_subsets(c.a))
    closed_side = all(
        act.is_topologically_free_on(c.a, X - U) for U in act.invariant_subsets(c.a)
    )
    return _agree(
        free_on_every_open_invariant=open_side,
        free_on_every_closed_invariant=closed_side,
        max_commutative_every_quotient=all(
            idl.is_A_maximal_commutative(c.quotient(X - F)) for F in act.invariant_subsets(c.a)
        ),
        residual_intersection_property=c.residual_ip(),
        all_ideals_graded=all(idl.is_graded_ideal(c.S, I) for I in c.ideals()),
        strongly_effective=tg.is_strongly_effective(c.T),
    ) + (None,)


def _freeness(c: _Context):
    return _agree(
        topologically_free=act.is_topologically_free(c.a),
        diagonal_max_commutative=idl.is_A_maximal_commutative(c.S),
        intersection_property=idl.has_intersection_property(c.S, c.ideals()),
        effective=tg.is_effective(c.T),
    ) + (None,)


def _ideals_vs_open_sets(c: _Context):
    S = c.S
    ideals = c.ideals()
    images = [idl.Phi(S, I) for I in ideals]
    bijective = len(set(images)) == len(ideals) and set(images) == set(
        act.invariant_subsets(c.a)
    )
    return _agree(
        residually_free=act.is_residually_topologically_free(c.a), ideal_bijection=bijective
    ) + (None,)


def _graded_vs_dynamics(c: _Context):
    c.nonempty_space()
    graded = c.graded_from_enumeration()
    sides = {
        "graded_simple": c.S.dim > 0 and len(graded) == 2,
        "minimal": act.is_minimal(c.a),
        "graded_prime": idl.is_prime(c.S, graded),
        "topologically_transitive": act.is_topologically_transitive(c.a),
    }
    ok = (
        sides["graded_simple"] == sides["minimal"]
        and sides["graded_prime"] == sides["topologically_transitive"]
    )
    return ok, sides, None


def _prime_simple_dynamics(c: _Context):
    c.nonempty_space()
    prime = idl.is_prime(c.S, c.ideals())
    simple = idl.is_simple(c.S, c.ideals())
    trans = act.is_topologically_transitive(c.a)
    free = act.is_topologically_free(c.a)
    minimal = act.is_minimal(c.a)
    ok = ((not prime) or trans) and ((not (free and trans)) or prime) and (
        (minimal and free) == simple
    )
    return ok, {
        "prime": prime,
        "simple": simple,
        "topologically_transitive": trans,
        "topologically_free": free,
        "minimal": minimal,
    }, None


# -- steinberg suite ----------------------------------------------------------


def _groupoid_dynamics(c: _Context):
    rows = tg.check_CTS(c.a)
    bad = [f"{name}: action={x}, groupoid={y}" for name, x, y in rows if x != y]
    return not bad, {name: x for name, x, _ in rows[:4]}, "; ".join(bad) or None


def _free_vs_effective(c: _Context):
    return _agree(
        topologically_free=act.is_topologically_free(c.a), effective=tg.is_effective(c.T)
    ) + (None,)


def _residual_vs_strong(c: _Context):
    return _agree(
        residually_free=act.is_residually_topologically_free(c.a),
        strongly_effective=tg.is_strongly_effective(c.T),
    ) + (None,)


def _steinberg_iso(c: _Context):
    r = tg.check_steinberg_iso(c.S, c.T)
    sides = {
        "bijective": r.bijective,
        "multiplicative_pairs": r.multiplicative_pairs,
        "total_pairs": r.total_pairs,
        "unit_preserving": r.unit_preserving,
    }
    return r.ok, sides, (f"pair {r.witness}" if r.witness else None)


def _convolution_associative(c: _Context):
    T, p = c.T, c.p
    n = len(T)
    triples = [
        tuple(np.array([c.rng.randrange(p) for _ in range(n)], dtype=np.int64) for _ in range(3))
        for _ in range(100)
    ]
    one = tg.unit_indicator(T)
    unit_ok = all(
        np.array_equal(tg.steinberg_multiply(T, one, f, p), f % p)
        and np.array_equal(tg.steinberg_multiply(T, f, one, p), f % p)
        for f, _, _ in triples
    )
    ok = tg.convolution_associative(T, triples, p) and unit_ok
    return ok, {"triples": len(triples)}, None


# -- stone suite --------------------------------------------------------------


def _stone_round_trip(c: _Context):
    tau = stone.algebraic_presentation(c.S.A)
    theta = stone.induced_theta(tau)
    return theta == c.a, {"points": len(c.a.points)}, None


def _stone_equivariance(c: _Context):
    tau = stone.algebraic_presentation(c.S.A)
    bad = stone.check_equivariance(tau)
    return not bad, {"squares_failed": len(bad)}, "; ".join(bad[:3]) or None


def _stone_zeta(c: _Context):
    bad = stone.check_zeta(stone.algebraic_presentation(c.S.A))
    return not bad, {"filters_failed": len(bad)}, "; ".join(bad[:3]) or None


CHECKS: dict[str, list[tuple[str, Callable]]] = {
    "ideal": [
        ("skew-ring-structure", _skew_structure),
        ("expectation-identities", _expectation_identities),
        ("quotient-exact-sequence", _exact_sequences),
        ("local-units-identity", _local_units),
        ("graded-ideal-correspondence", _graded_correspondence),
        ("graded-iff-residual-intersection", _graded_iff_residual),
        ("quotient-maximal-commutative", _quotient_maximal_commutative),
        ("intersection-property-maximal-commutative", _ip_vs_max_commutative),
        ("graded-simple-iff-G-simple", _graded_simple),
        ("graded-prime-iff-G-prime", _graded_prime),
        ("prime-implies-G-prime", _prime_implies_G_prime),
        ("prime-iff-G-prime-under-intersection", _prime_under_ip),
        ("simple-iff-G-simple-with-intersection", _simple_criterion),
        ("ideal-hull-and-core", _hull_and_core),
    ],
    "dynamics": [
        ("minimal-iff-G-simple", _minimal_vs_G_simple),
        ("transitive-iff-G-prime", _transitive_vs_G_prime),
        ("free-on-F-iff-maximal-commutative", _free_on_F),
        ("residual-freeness-equivalences", _residual_freeness),
        ("freeness-equivalences", _freeness),
        ("ideals-iff-open-invariant-sets", _ideals_vs_open_sets),
        ("graded-simple-prime-dynamics", _graded_vs_dynamics),
        ("prime-simple-dynamics", _prime_simple_dynamics),
    ],
    "steinberg": [
        ("transformation-groupoid-dynamics", _groupoid_dynamics),
        ("free-iff-effective", _free_vs_effective),
        ("residually-free-iff-strongly-effective", _residual_vs_strong),
        ("steinberg-isomorphism", _steinberg_iso),
        ("convolution-associative", _convolution_associative),
    ],
    "stone": [
        ("stone-round-trip", _stone_round_trip),
        ("stone-equivariance", _stone_equivariance),
        ("stone-filter-correspondence", _stone_zeta),
    ],
}


def _run_check(tag: str, fn: Callable, c: _Context) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, sides, witness = fn(c)
        status = PASS if ok else FAIL
        if not ok and witness is None:
            witness = json.dumps(sides, sort_keys=True, default=str)
    except _Skip as exc:
        status, sides, witness = SKIPPED, {}, str(exc)
    return CheckResult(tag, status, sides, witness, time.perf_counter() - t0)


def run_suite(
    instance: FinitePartialAction | Ultragraph,
    suite: str = "all",
    p: int = 2,
    max_dim: int | None = None,
    samples: int = 100,
    max_len: int = 12,
) -> VerificationReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    if isinstance(instance, Ultragraph):
        t0 = time.perf_counter()
        r = check_KR(instance, max_len)
        res = CheckResult(
            "condition-K-iff-all-loops-recurrent",
            PASS if r.consistent else FAIL,
            {"condition_K": r.condition_K, "bounded_all_recurrent": r.bounded_all_recurrent},
            "; ".join(r.discrepancies) or None,
            time.perf_counter() - t0,
        )
        return VerificationReport(fingerprint(instance), [res])
    c = _Context(instance, p, max_dim, samples)
    names = [s for s in ("ideal", "dynamics", "steinberg", "stone") if suite in (s, "all")]
    results = [_run_check(tag, fn, c) for s in names for tag, fn in CHECKS[s]]
    return VerificationReport(fingerprint(instance, p), sorted(results, key=lambda r: r.tag))
