"""The function algebra R = F_p^X and the partial action induced on it.

Over a field, every ideal of F_p^X is the set of functions supported in
some subset U: if f is in the ideal and f(x) != 0 then 1_x = f(x)^-1 1_x f
is in it too, so the ideal is spanned by the indicators it contains.
Ideals of R are therefore handled through their support sets, while the
subspace representation is kept available as a cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .action import FinitePartialAction, restrict, subset_key
from .errors import ValidationError
from .linalg import SUPPORTED_PRIMES, Subspace


@dataclass(frozen=True)
class PrimeField:
    p: int = 2

    def __post_init__(self):
        if self.p not in SUPPORTED_PRIMES:
            raise ValidationError(f"unsupported field size {self.p}; use one of {SUPPORTED_PRIMES}")

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)

    def elements(self) -> range:
        return range(self.p)


@dataclass(frozen=True)
class FnElement:
    """A function X -> F_p as coefficients in canonical point order."""

    points: tuple[str, ...]
    values: tuple[int, ...]
    p: int

    def __post_init__(self):
        if len(self.values) != len(self.points):
            raise ValueError("coefficient vector length must equal |X|")

    def _same(self, other: "FnElement") -> None:
        if self.points != other.points or self.p != other.p:
            raise ValueError("elements of different function algebras")

    def __add__(self, other: "FnElement") -> "FnElement":
        self._same(other)
        return FnElement(self.points, tuple((a + b) % self.p for a, b in zip(self.values, other.values)), self.p)

    def __sub__(self, other: "FnElement") -> "FnElement":
        self._same(other)
        return FnElement(self.points, tuple((a - b) % self.p for a, b in zip(self.values, other.values)), self.p)

    def __neg__(self) -> "FnElement":
        return FnElement(self.points, tuple((-a) % self.p for a in self.values), self.p)

    def __mul__(self, other):
        if isinstance(other, int):
            return FnElement(self.points, tuple((a * other) % self.p for a in self.values), self.p)
        self._same(other)
        return FnElement(self.points, tuple((a * b) % self.p for a, b in zip(self.values, other.values)), self.p)

    __rmul__ = __mul__

    def __call__(self, x: str) -> int:
        return self.values[self.points.index(x)]

    def support(self) -> frozenset[str]:
        return frozenset(x for x, v in zip(self.points, self.values) if v)

    def is_zero(self) -> bool:
        return not any(self.values)

    def to_list(self) -> list[int]:
        return list(self.values)


def fn_zero(points, p) -> FnElement:
    return FnElement(tuple(points), (0,) * len(points), p)


def indicator(points, U: Iterable[str], p: int) -> FnElement:
    U = set(U)
    return FnElement(tuple(points), tuple(1 if x in U else 0 for x in points), p)


def fn_from_dict(points, coeffs: dict, p: int) -> FnElement:
    return FnElement(tuple(points), tuple(coeffs.get(x, 0) % p for x in points), p)


class InducedAction:
    """alpha_g(f) = f o theta_{g^-1} on X_g (0 elsewhere), D_g = functions on X_g."""

    def __init__(self, action: FinitePartialAction, field: PrimeField):
        self.action = action
        self.field = field
        self.p = field.p
        self.points = action.points
        self.groupoid = action.groupoid

    @property
    def dim(self) -> int:
        return len(self.points)

    def D(self, g: str) -> frozenset[str]:
        """Support set of the ideal D_g."""
        return self.action.domain[g]

    def unit_of(self, g: str) -> FnElement:
        """Multiplicative identity 1_{X_g} of D_g."""
        return indicator(self.points, self.D(g), self.p)

    def one(self) -> FnElement:
        return indicator(self.points, self.points, self.p)

    def zero(self) -> FnElement:
        return fn_zero(self.points, self.p)

    def basis(self, U: Iterable[str] | None = None) -> list[FnElement]:
        U = self.points if U is None else sorted(U)
        return [indicator(self.points, [x], self.p) for x in U]

    def in_D(self, g: str, f: FnElement) -> bool:
        return f.support() <= self.D(g)

    def alpha(self, g: str, f: FnElement) -> FnElement:
        gi = self.groupoid.inverse(g)
        if not self.in_D(gi, f):
            raise ValidationError(f"element is not in D_{gi}")
        back = self.action.maps[gi]
        vals = tuple(f(back[x]) if x in self.D(g) else 0 for x in self.points)
        return FnElement(self.points, vals, self.p)

    def vector(self, f: FnElement) -> np.ndarray:
        return np.array(f.values, dtype=np.int64)

    def element(self, v) -> FnElement:
        return FnElement(self.points, tuple(int(a) % self.p for a in v), self.p)

    def check_axioms(self) -> None:
        """Re-check the ring-level partial action axioms on basis vectors."""
        G = self.groupoid
        basis = self.basis()
        for g in G.morphisms:
            Dg = Subspace.span([self.vector(b) for b in self.basis(self.D(g))], self.dim, self.p)
            Dr = self.D(G.identity(G.dst(g)))
            # D_{r(g)} ideal of R and D_g ideal of D_{r(g)}
            for b in basis:
                for d in self.basis(self.D(g)):
                    if not Dg.contains(self.vector(b * d)):
                        raise ValidationError(f"D_{g} is not an ideal")
            if not self.D(g) <= Dr:
                raise ValidationError(f"D_{g} is not inside D_r({g})")
            gi = G.inverse(g)
            src_basis = self.basis(self.D(gi))
            images = [self.alpha(g, b) for b in src_basis]
            if Subspace.span([self.vector(i) for i in images], self.dim, self.p) != Dg or (
                len(images) != Dg.dim
            ):
                raise ValidationError(f"alpha_{g} is not bijective onto D_{g}")
            for a, b in itertools.product(src_basis, repeat=2):
                if self.alpha(g, a * b) != self.alpha(g, a) * self.alpha(g, b):
                    raise ValidationError(f"alpha_{g} is not multiplicative")
            if G.is_unit(g):
                for b in src_basis:
                    if self.alpha(g, b) != b:
                        raise ValidationError(f"alpha_{g} is not the identity")
        for g in G.morphisms:
            for h in G.morphisms:
                gh = G.compose(g, h)
                if gh is None:
                    continue
                common = self.D(G.inverse(g)) & self.D(h)
                for b in self.basis(common):
                    pre = self.alpha(G.inverse(h), b)
                    if not self.in_D(G.inverse(gh), pre):
                        raise ValidationError(f"domain axiom fails for ({g}, {h})")
                    if self.alpha(g, self.alpha(h, pre)) != self.alpha(gh, pre):
                        raise ValidationError(f"composition axiom fails for ({g}, {h})")
        total = self.zero()
        for e in G.objects:
            total = total + self.unit_of(G.identity(e))
        if total != self.one():
            raise ValidationError("R is not the direct sum of the unit ideals")


def induced_action(a: FinitePartialAction, k: PrimeField | int = 2) -> InducedAction:
    if isinstance(k, int):
        k = PrimeField(k)
    A = InducedAction(a, k)
    A.check_axioms()
    return A


# -- ideals of R --------------------------------------------------------------


def ideal_from_open(A: InducedAction, U: Iterable[str]) -> Subspace:
    """Functions supported in U."""
    U = frozenset(U)
    if not U <= set(A.points):
        raise ValidationError("U is not a subset of X")
    return Subspace.span([A.vector(b) for b in A.basis(U)], A.dim, A.p)


def is_ideal(A: InducedAction, J: Subspace) -> bool:
    return all(
        J.contains((row * A.vector(b)) % A.p) for row in J.rows for b in A.basis()
    )


def support_of_ideal(A: InducedAction, J: Subspace) -> frozenset[str]:
    """Union of supports of the members of J."""
    if not is_ideal(A, J):
        raise ValidationError("J is not an ideal of R")
    out = set()
    for row in J.rows:
        out |= {x for x, v in zip(A.points, row) if v}
    return frozenset(out)


def is_invariant_ideal(A: InducedAction, J: Subspace) -> bool:
    """alpha_g(J & D_{g^-1}) inside J for every g, checked on a basis."""
    G = A.groupoid
    for g in G.morphisms:
        gi = G.inverse(g)
        Dgi = ideal_from_open(A, A.D(gi))
        for row in (J & Dgi).rows:
            if not J.contains(A.vector(A.alpha(g, A.element(row)))):
                return False
    return True


def all_ideals_of_R(A: InducedAction) -> list[Subspace]:
    return [ideal_from_open(A, U) for U in all_subsets(A.points)]


def invariant_ideals(A: InducedAction) -> list[Subspace]:
    """G-invariant ideals of R, decided algebraically."""
    return [J for J in all_ideals_of_R(A) if is_invariant_ideal(A, J)]


def ideal_product(A: InducedAction, I: Subspace, J: Subspace) -> Subspace:
    prods = [(a * b) % A.p for a in I.rows for b in J.rows]
    return Subspace.span(prods, A.dim, A.p) if prods else Subspace.zero(A.dim, A.p)


def is_G_simple(A: InducedAction) -> bool:
    if A.dim == 0:
        return False
    zero, full = Subspace.zero(A.dim, A.p), Subspace.full(A.dim, A.p)
    return all(J in (zero, full) for J in invariant_ideals(A))


def is_G_prime(A: InducedAction) -> bool:
    if A.dim == 0:
        return False
    nonzero = [J for J in invariant_ideals(A) if J.dim]
    return not any(ideal_product(A, I, J).dim == 0 for I in nonzero for J in nonzero)


def all_subsets(points) -> list[frozenset[str]]:
    out = [
        frozenset(c)
        for r in range(len(points) + 1)
        for c in itertools.combinations(points, r)
    ]
    return sorted(out, key=subset_key)


def quotient_action(A: InducedAction, J: Subspace | Iterable[str]) -> InducedAction:
    """Quotient by an invariant ideal, realized on the complement of its support."""
    U = _as_support(A, J)
    J = ideal_from_open(A, U)
    if not is_invariant_ideal(A, J):
        raise ValidationError("J is not a G-invariant ideal")
    rest = frozenset(A.points) - U
    return InducedAction(restrict(A.action, rest), A.field)


def check_quotient_iso(A: InducedAction, J: Subspace | Iterable[str]) -> bool:
    """(D_g + J)/J matches functions on X_g minus U, compatibly with alpha."""
    U = _as_support(A, J)
    Jsp = ideal_from_open(A, U)
    Q = quotient_action(A, U)
    G = A.groupoid
    for g in G.morphisms:
        Dg = ideal_from_open(A, A.D(g))
        if (Dg + Jsp).dim - Jsp.dim != len(Q.D(g)):
            return False
        if Q.D(g) != A.D(g) - U:
            return False
        for x in sorted(A.D(G.inverse(g)) - U):
            img = A.alpha(g, indicator(A.points, [x], A.p))
            y = Q.action.maps[g][x]
            target = indicator(A.points, [y], A.p)
            # images agree modulo J
            if not Jsp.contains(A.vector(img - target)):
                return False
    return True


def _as_support(A: InducedAction, J) -> frozenset[str]:
    if isinstance(J, Subspace):
        return support_of_ideal(A, J)
    return frozenset(J)
