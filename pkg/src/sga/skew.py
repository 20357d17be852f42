"""The partial skew groupoid ring R x_alpha G over F_p.

Elements are stored sparsely by morphism and densely by point: a mapping
g -> FnElement with support inside X_g. The monomial basis is
{1_x delta_g : x in X_g}, ordered by morphism, then point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping

import numpy as np

from .action import FinitePartialAction, restrict
from .errors import ValidationError
from .fnalgebra import (
    FnElement,
    InducedAction,
    PrimeField,
    ideal_from_open,
    indicator,
    induced_action,
    is_invariant_ideal,
    support_of_ideal,
)
from .linalg import Subspace, rank


class SkewElement:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "SkewRing", coeffs: Mapping[str, FnElement]):
        self.ring = ring
        clean = {}
        for g, f in coeffs.items():
            if f.is_zero():
                continue
            if not ring.A.in_D(g, f):
                raise ValidationError(f"coefficient of {g} is not supported in X_{g}")
            clean[g] = f
        self.coeffs = clean

    def _same(self, other: "SkewElement") -> None:
        if other.ring is not self.ring:
            raise ValidationError("elements belong to different skew rings")

    def component(self, g: str) -> FnElement:
        return self.coeffs.get(g, self.ring.A.zero())

    def support(self) -> frozenset[str]:
        return frozenset(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "SkewElement") -> "SkewElement":
        self._same(other)
        out = dict(self.coeffs)
        for g, f in other.coeffs.items():
            out[g] = out[g] + f if g in out else f
        return SkewElement(self.ring, out)

    def __neg__(self) -> "SkewElement":
        return SkewElement(self.ring, {g: -f for g, f in self.coeffs.items()})

    def __sub__(self, other: "SkewElement") -> "SkewElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return SkewElement(self.ring, {g: f * other for g, f in self.coeffs.items()})
        return self.ring.multiply(self, other)

    def __rmul__(self, other: int) -> "SkewElement":
        return self * other

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkewElement):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted((g, f.values) for g, f in self.coeffs.items())))

    def __repr__(self) -> str:
        terms = [
            f"{c}*1_{x}d_{g}"
            for g in sorted(self.coeffs)
            for x, c in zip(self.ring.points, self.coeffs[g].values)
            if c
        ]
        return " + ".join(terms) or "0"

    def to_vector(self) -> np.ndarray:
        v = np.zeros(self.ring.dim, dtype=np.int64)
        for g, f in self.coeffs.items():
            for x, c in zip(self.ring.points, f.values):
                if c:
                    v[self.ring.index[(g, x)]] = c
        return v

    def to_dict(self) -> dict:
        return {
            "p": self.ring.p,
            "coefficients": {
                g: {x: c for x, c in zip(self.ring.points, f.values) if c}
                for g, f in sorted(self.coeffs.items())
            },
        }


class SkewRing:
    def __init__(self, A: InducedAction):
        self.A = A
        self.action = A.action
        self.groupoid = A.groupoid
        self.points = A.points
        self.p = A.p
        G = self.groupoid
        self.basis: tuple[tuple[str, str], ...] = tuple(
            (g, x) for g in G.morphisms for x in self.points if x in A.D(g)
        )
        self.index = {m: i for i, m in enumerate(self.basis)}

    @classmethod
    def of(cls, a: FinitePartialAction, p: int | PrimeField = 2) -> "SkewRing":
        return cls(induced_action(a, p))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"SkewRing(dim={self.dim}, p={self.p})"

    # -- constructors --------------------------------------------------------

    def zero(self) -> SkewElement:
        return SkewElement(self, {})

    def monomial(self, g: str, x: str, c: int = 1) -> SkewElement:
        return SkewElement(self, {g: indicator(self.points, [x], self.p) * c})

    def delta(self, g: str, f: FnElement) -> SkewElement:
        """f delta_g."""
        return SkewElement(self, {g: f})

    def element(self, coeffs: Mapping[str, Mapping[str, int]]) -> SkewElement:
        """From ``{g: {x: c}}``."""
        out = {}
        for g, fx in coeffs.items():
            if g not in self.groupoid.morphisms:
                raise ValidationError(f"unknown morphism {g!r}")
            unknown = set(fx) - set(self.points)
            if unknown:
                raise ValidationError(f"unknown points {sorted(unknown)}")
            out[g] = FnElement(self.points, tuple(fx.get(x, 0) % self.p for x in self.points), self.p)
        return SkewElement(self, out)

    def from_vector(self, v) -> SkewElement:
        buckets: dict[str, list[int]] = {}
        for (g, x), c in zip(self.basis, np.asarray(v, dtype=np.int64) % self.p):
            if c:
                buckets.setdefault(g, [0] * len(self.points))[self.points.index(x)] = int(c)
        return SkewElement(
            self, {g: FnElement(self.points, tuple(vals), self.p) for g, vals in buckets.items()}
        )

    def monomials(self) -> list[SkewElement]:
        return [self.monomial(g, x) for g, x in self.basis]

    # -- arithmetic ----------------------------------------------------------

    def multiply(self, a: SkewElement, b: SkewElement) -> SkewElement:
        """a_g d_g * b_h d_h = alpha_g(alpha_{g^-1}(a_g) b_h) d_{gh} when gh is defined."""
        a._same(b)
        if a.ring is not self:
            raise ValidationError("elements belong to a different skew ring")
        G, A = self.groupoid, self.A
        out: dict[str, FnElement] = {}
        for g, ag in a.coeffs.items():
            back = A.alpha(G.inverse(g), ag)
            for h, bh in b.coeffs.items():
                gh = G.compose(g, h)
                if gh is None:
                    continue
                term = A.alpha(g, back * bh)
                out[gh] = out[gh] + term if gh in out else term
        return SkewElement(self, out)

    @cached_property
    def table(self) -> np.ndarray:
        """table[i, j] = k if m_i m_j = m_k, else -1; derived from ``multiply``."""
        n = self.dim
        T = np.full((n, n), -1, dtype=np.int64)
        mons = self.monomials()
        for i, a in enumerate(mons):
            for j, b in enumerate(mons):
                prod = self.multiply(a, b)
                if prod.is_zero():
                    continue
                v = prod.to_vector()
                (k,) = np.nonzero(v)[0]
                if v[k] != 1:
                    raise AssertionError("monomial product is not a monomial")
                T[i, j] = k
        return T

    def multiply_fast(self, u, v) -> np.ndarray:
        """Product of coefficient vectors through the structure table."""
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        out = np.zeros(self.dim, dtype=np.int64)
        T = self.table
        ii, jj = np.nonzero((T >= 0) & (u[:, None] != 0) & (v[None, :] != 0))
        np.add.at(out, T[ii, jj], u[ii] * v[jj])
        return out % self.p

    @cached_property
    def left_mats(self) -> np.ndarray:
        """left_mats[i] @ v = m_i * v for the i-th monomial."""
        n = self.dim
        L = np.zeros((n, n, n), dtype=np.int64)
        T = self.table
        ii, jj = np.nonzero(T >= 0)
        L[ii, T[ii, jj], jj] = 1
        return L

    @cached_property
    def right_mats(self) -> np.ndarray:
        """right_mats[j] @ v = v * m_j."""
        n = self.dim
        R = np.zeros((n, n, n), dtype=np.int64)
        T = self.table
        ii, jj = np.nonzero(T >= 0)
        R[jj, T[ii, jj], ii] = 1
        return R

    def identity_element(self) -> SkewElement:
        G = self.groupoid
        return SkewElement(self, {G.identity(e): self.A.unit_of(G.identity(e)) for e in G.objects})

    # -- structural maps -----------------------------------------------------

    def p0(self, s: SkewElement) -> FnElement:
        """Sum of the unit-indexed coefficients."""
        out = self.A.zero()
        for g, f in s.coeffs.items():
            if self.groupoid.is_unit(g):
                out = out + f
        return out

    def psi(self, f: FnElement) -> SkewElement:
        """Split f along the unit blocks: f -> sum_e (f 1_{X_e}) delta_e."""
        G = self.groupoid
        return SkewElement(
            self, {G.identity(e): f * self.A.unit_of(G.identity(e)) for e in G.objects}
        )

    def E(self, s: SkewElement) -> SkewElement:
        """Conditional expectation onto the diagonal, psi o p0."""
        return self.psi(self.p0(s))

    def tau(self, s: SkewElement) -> FnElement:
        out = self.A.zero()
        for f in s.coeffs.values():
            out = out + f
        return out

    def component(self, s: SkewElement, g: str) -> FnElement:
        return s.component(g)

    def is_homogeneous(self, s: SkewElement) -> bool:
        return len(s.coeffs) <= 1

    def graded_part(self, s: SkewElement, g: str) -> SkewElement:
        return SkewElement(self, {g: s.component(g)})

    def diagonal(self) -> Subspace:
        """A = span of 1_x delta_e over units e."""
        G = self.groupoid
        vecs = []
        for i, (g, _) in enumerate(self.basis):
            if G.is_unit(g):
                v = np.zeros(self.dim, dtype=np.int64)
                v[i] = 1
                vecs.append(v)
        return Subspace.span(vecs, self.dim, self.p)

    def unit_indices(self) -> list[int]:
        return [i for i, (g, _) in enumerate(self.basis) if self.groupoid.is_unit(g)]

    def check_associative(self) -> bool:
        T = self.table
        n = self.dim
        for i in range(n):
            for j in range(n):
                ij = T[i, j]
                for k in range(n):
                    left = T[ij, k] if ij >= 0 else -1
                    jk = T[j, k]
                    right = T[i, jk] if jk >= 0 else -1
                    if left != right:
                        return False
        return True

    def check_graded(self) -> bool:
        """S_g S_h inside S_{gh} on monomials (and 0 when gh is undefined)."""
        G = self.groupoid
        T = self.table
        for i, (g, _) in enumerate(self.basis):
            for j, (h, _) in enumerate(self.basis):
                k = T[i, j]
                if k < 0:
                    continue
                if G.compose(g, h) is None or self.basis[k][0] != G.compose(g, h):
                    return False
        return True


def s_unit(fs: Iterable[FnElement]) -> FnElement:
    """Idempotent u with u f = f = f u for every f in fs."""
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one element")
    support = set().union(*(f.support() for f in fs))
    return indicator(fs[0].points, support, fs[0].p)


@dataclass
class QuotientSequence:
    """0 -> kernel -> ring -> quotient -> 0 for an invariant ideal J of R."""

    ring: SkewRing
    kernel: SkewRing
    quotient: SkewRing
    removed: frozenset[str]

    def project(self, s: SkewElement) -> SkewElement:
        """Restrict every coefficient to X minus supp(J)."""
        Q = self.quotient
        out = {}
        for g, f in s.coeffs.items():
            out[g] = FnElement(Q.points, tuple(f(x) for x in Q.points), Q.p)
        return SkewElement(Q, out)

    def embed(self, s: SkewElement) -> SkewElement:
        S = self.ring
        out = {}
        for g, f in s.coeffs.items():
            out[g] = FnElement(
                S.points,
                tuple(f(x) if x in self.removed else 0 for x in S.points),
                S.p,
            )
        return SkewElement(S, out)

    def _matrix(self, fn: Callable, src: SkewRing, dst: SkewRing) -> np.ndarray:
        cols = [fn(m).to_vector() for m in src.monomials()]
        return np.array(cols, dtype=np.int64).reshape(src.dim, dst.dim).T

    def check_exact(self) -> bool:
        S, K, Q = self.ring, self.kernel, self.quotient
        pi = self._matrix(self.project, S, Q)
        iota = self._matrix(self.embed, K, S)
        if K.dim + Q.dim != S.dim:
            return False
        if (pi @ iota % S.p).any():
            return False
        if K.dim and rank(iota.T, S.p) != K.dim:
            return False
        if Q.dim and rank(pi, S.p) != Q.dim:
            return False
        # with the ranks above, dim ker(pi) = dim K = dim image(iota)
        img = Subspace.span(iota.T, S.dim, S.p) if K.dim else Subspace.zero(S.dim, S.p)
        for m in S.monomials():
            v = m.to_vector()
            if not self.project(m).is_zero() and img.contains(v):
                return False
            if self.project(m).is_zero() and not img.contains(v):
                return False
        # ring homomorphisms
        for a in S.monomials():
            for b in S.monomials():
                if self.project(a * b) != self.project(a) * self.project(b):
                    return False
        for a in K.monomials():
            for b in K.monomials():
                if self.embed(a * b) != self.embed(a) * self.embed(b):
                    return False
        return True


def quotient_skew_ring(S: SkewRing, J: Subspace | Iterable[str]) -> QuotientSequence:
    A = S.A
    U = support_of_ideal(A, J) if isinstance(J, Subspace) else frozenset(J)
    if not is_invariant_ideal(A, ideal_from_open(A, U)):
        raise ValidationError("J is not a G-invariant ideal")
    rest = frozenset(S.points) - U
    kernel = SkewRing(InducedAction(restrict(S.action, U), A.field))
    quotient = SkewRing(InducedAction(restrict(S.action, rest), A.field))
    return QuotientSequence(S, kernel, quotient, U)
