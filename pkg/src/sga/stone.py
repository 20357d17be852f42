"""Finite Stone duality for R = F_p^Y.

Idempotents of F_p^Y are the 0/1 vectors, i.e. subsets of Y, so E(R) is
the powerset Boolean algebra with atoms the singletons. Every filter of a
finite Boolean algebra is principal; filters are stored as explicit
frozensets of elements when the construction needs them and as their
least element otherwise. Ultrafilters are the principal filters at atoms,
named after the atom.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .action import FinitePartialAction
from .errors import ValidationError
from .fnalgebra import InducedAction
from .groupoid import Groupoid
from .linalg import SUPPORTED_PRIMES, rank

Element = frozenset


class FiniteBooleanAlgebra:
    """Powerset algebra on ``atoms``; e v f = e + f - ef, e ^ f = ef, not e = 1 - e."""

    def __init__(self, atoms: Iterable[str]):
        self.atoms: tuple[str, ...] = tuple(sorted(atoms))
        self.top: Element = frozenset(self.atoms)
        self.bottom: Element = frozenset()

    def elements(self, below: Element | None = None) -> list[Element]:
        base = sorted(self.top if below is None else below)
        return [
            frozenset(c) for r in range(len(base) + 1) for c in itertools.combinations(base, r)
        ]

    def join(self, e: Element, f: Element) -> Element:
        return e | f

    def meet(self, e: Element, f: Element) -> Element:
        return e & f

    def complement(self, e: Element) -> Element:
        return self.top - e

    def le(self, e: Element, f: Element) -> bool:
        return e <= f

    def up(self, P: Iterable[Element]) -> frozenset[Element]:
        """Union of the principal up-sets of the members of P."""
        P = list(P)
        return frozenset(x for x in self.elements() if any(z <= x for z in P))

    def to_vector(self, e: Element) -> np.ndarray:
        return np.array([1 if y in e else 0 for y in self.atoms], dtype=np.int64)

    def from_vector(self, v) -> Element:
        v = np.asarray(v)
        if not np.isin(v, (0, 1)).all():
            raise ValidationError("vector is not an idempotent")
        return frozenset(y for y, c in zip(self.atoms, v) if c)


def idempotents(Y: Iterable[str], p: int = 2) -> FiniteBooleanAlgebra:
    """E(F_p^Y); only 0 and 1 are idempotent in a field, so this is the powerset."""
    if p not in SUPPORTED_PRIMES:
        raise ValidationError(f"unsupported field size {p}")
    return FiniteBooleanAlgebra(Y)


@dataclass(frozen=True)
class StoneDual:
    algebra: FiniteBooleanAlgebra

    @property
    def ultrafilters(self) -> tuple[str, ...]:
        return self.algebra.atoms

    def filter_of(self, atom: str) -> frozenset[Element]:
        return self.algebra.up([frozenset([atom])])

    def Z(self, e: Element) -> frozenset[str]:
        """Ultrafilters containing e."""
        return frozenset(y for y in self.ultrafilters if e in self.filter_of(y))


def ultrafilters(B: FiniteBooleanAlgebra) -> StoneDual:
    return StoneDual(B)


def is_ultrafilter(B: FiniteBooleanAlgebra, F: frozenset[Element]) -> bool:
    if B.bottom in F or B.top not in F:
        return False
    for e in B.elements():
        if (e in F) == (B.complement(e) in F):
            return False
    return all(B.meet(e, f) in F for e in F for f in F) and B.up(F) == F


# -- algebraic partial actions ------------------------------------------------


class IdempotentPartialAction:
    """tau = (D_g, tau_g) on F_p^Y with D_g = u_g R and tau_g as a matrix.

    ``tau[g]`` acts on coordinate vectors; only its restriction to D_{g^-1}
    matters and columns outside D_{g^-1} must be zero.
    """

    def __init__(
        self,
        groupoid: Groupoid,
        atoms: Iterable[str],
        p: int,
        units: Mapping[str, Iterable[str]],
        tau: Mapping[str, np.ndarray],
    ):
        self.groupoid = groupoid
        self.B = idempotents(atoms, p)
        self.atoms = self.B.atoms
        self.p = p
        self.u = {g: frozenset(units[g]) for g in groupoid.morphisms}
        self.tau = {g: np.asarray(tau[g], dtype=np.int64) % p for g in groupoid.morphisms}
        self._check()

    def apply(self, g: str, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        if not self.B.from_vector(v != 0) <= self.u[self.groupoid.inverse(g)]:
            raise ValidationError(f"element is outside D_{self.groupoid.inverse(g)}")
        return (self.tau[g] @ v) % self.p

    def apply_idempotent(self, g: str, e: Element) -> Element:
        return self.B.from_vector(self.apply(g, self.B.to_vector(e)))

    def _check(self) -> None:
        G, B, p = self.groupoid, self.B, self.p
        n = len(self.atoms)
        total = frozenset()
        for o in G.objects:
            ue = self.u[G.identity(o)]
            if total & ue:
                raise ValidationError("unit ideals overlap")
            total |= ue
        if total != B.top:
            raise ValidationError("R is not the direct sum of the unit ideals")
        for g in G.morphisms:
            gi = G.inverse(g)
            if not self.u[g] <= self.u[G.identity(G.dst(g))]:
                raise ValidationError(f"D_{g} is not inside D_r({g})")
            M = self.tau[g]
            if M.shape != (n, n):
                raise ValidationError(f"tau_{g} has the wrong shape")
            outside = [i for i, y in enumerate(self.atoms) if y not in self.u[gi]]
            if M[:, outside].any():
                raise ValidationError(f"tau_{g} is nonzero outside D_{gi}")
            basis = [B.to_vector({y}) for y in sorted(self.u[gi])]
            imgs = [(M @ b) % p for b in basis]
            for v in imgs:
                if not B.from_vector(v != 0) <= self.u[g]:
                    raise ValidationError(f"tau_{g} leaves D_{g}")
            if len(self.u[g]) != len(self.u[gi]) or (
                basis and rank(np.array(imgs), p) != len(basis)
            ):
                raise ValidationError(f"tau_{g} is not bijective onto D_{g}")
            for a, b in itertools.product(basis, repeat=2):
                if not np.array_equal((M @ (a * b)) % p, (M @ a) * (M @ b) % p):
                    raise ValidationError(f"tau_{g} is not multiplicative")
            if G.is_unit(g) and not all(np.array_equal(v, b) for v, b in zip(imgs, basis)):
                raise ValidationError(f"tau_{g} is not the identity")
        for g in G.morphisms:
            for h in G.morphisms:
                gh = G.compose(g, h)
                if gh is None:
                    continue
                common = self.u[G.inverse(g)] & self.u[h]
                for y in sorted(common):
                    pre = self.apply(G.inverse(h), B.to_vector({y}))
                    if not B.from_vector(pre != 0) <= self.u[G.inverse(gh)]:
                        raise ValidationError(f"domain axiom fails for ({g}, {h})")
                    if not np.array_equal(
                        self.apply(g, self.apply(h, pre)), self.apply(gh, pre)
                    ):
                        raise ValidationError(f"composition axiom fails for ({g}, {h})")


def algebraic_presentation(A: InducedAction) -> IdempotentPartialAction:
    """Read the induced action back as unit idempotents and matrices."""
    G = A.groupoid
    n = A.dim
    tau = {}
    for g in G.morphisms:
        M = np.zeros((n, n), dtype=np.int64)
        for i, f in enumerate(A.basis()):
            if f.support() <= A.D(G.inverse(g)):
                M[:, i] = A.vector(A.alpha(g, f))
        tau[g] = M
    return IdempotentPartialAction(
        G, A.points, A.p, {g: A.D(g) for g in G.morphisms}, tau
    )


def trivial_presentation(G: Groupoid, blocks: Mapping[str, Iterable[str]], p: int = 2):
    """Only units act, each as the identity on its block; other D_g are 0."""
    atoms = sorted(y for b in blocks.values() for y in b)
    n = len(atoms)
    units, tau = {}, {}
    for g in G.morphisms:
        if G.is_unit(g):
            blk = frozenset(blocks.get(G.unit_object(g), ()))
            units[g] = blk
            tau[g] = np.diag([1 if y in blk else 0 for y in atoms])
        else:
            units[g] = frozenset()
            tau[g] = np.zeros((n, n), dtype=np.int64)
    return IdempotentPartialAction(G, atoms, p, units, tau)


# -- the dual topological partial action --------------------------------------


def zeta(B: FiniteBooleanAlgebra, u: Element, F: frozenset[Element]) -> frozenset[Element]:
    """Filter of E(uR) -> filter of E(R): take the up-set in the big algebra."""
    return B.up(F)


def zeta_inverse(u: Element, F: frozenset[Element]) -> frozenset[Element]:
    """Filter of E(R) meeting u -> filter of E(uR): multiply by u."""
    return frozenset(u & x for x in F)


def _least(F: frozenset[Element]) -> Element:
    return frozenset.intersection(*F) if F else frozenset()


def induced_theta(tau: IdempotentPartialAction) -> FinitePartialAction:
    """theta_g(F) = up(tau_{g^-1}^{-1}(u_{g^-1} F)) on ultrafilters, named by atom."""
    G, B = tau.groupoid, tau.B
    dual = ultrafilters(B)
    unit = {}
    for y in dual.ultrafilters:
        Fy = dual.filter_of(y)
        owners = [o for o in G.objects if tau.u[G.identity(o)] in Fy]
        if len(owners) != 1:
            raise ValidationError(f"ultrafilter at {y} lies in {len(owners)} unit sets")
        unit[y] = owners[0]
    domain, maps = {}, {}
    for g in G.morphisms:
        gi = G.inverse(g)
        domain[g] = sorted(dual.Z(tau.u[g]))
        maps[g] = {}
        for y in sorted(dual.Z(tau.u[gi])):
            small = zeta_inverse(tau.u[gi], dual.filter_of(y))
            # preimage under tau_{g^-1}: D_g -> D_{g^-1}
            pre = frozenset(
                e for e in B.elements(tau.u[g]) if tau.apply_idempotent(gi, e) in small
            )
            image = zeta(B, tau.u[g], pre)
            if not is_ultrafilter(B, image):
                raise ValidationError(f"theta_{g} does not send ultrafilters to ultrafilters")
            (z,) = _least(image)
            maps[g][y] = z
    return FinitePartialAction(G, unit, domain, maps)


def check_zeta(tau: IdempotentPartialAction) -> list[str]:
    """zeta_g and its inverse agree on every filter of every E(D_g)."""
    B = tau.B
    bad = []
    for g, u in sorted(tau.u.items()):
        for a in B.elements(u):
            if not a:
                continue
            small = frozenset(e for e in B.elements(u) if a <= e)
            big = zeta(B, u, small)
            if zeta_inverse(u, big) != small or big != B.up([a]):
                bad.append(f"{g}: {sorted(a)}")
    return bad


def check_equivariance(tau: IdempotentPartialAction, theta: FinitePartialAction | None = None) -> list[str]:
    """phi_g(rho_g(1_{Z_e})) == tau_g(phi_{g^-1}(1_{Z_e})) for every idempotent e <= u_{g^-1}.

    phi sends the indicator of Z_f (f <= u_g) to f; rho_g(h) = h o theta_{g^-1}.
    Returns witnesses for every failing square.
    """
    theta = induced_theta(tau) if theta is None else theta
    G, B = tau.groupoid, tau.B
    dual = ultrafilters(B)
    bad = []
    for g in G.morphisms:
        gi = G.inverse(g)
        for e in B.elements(tau.u[gi]):
            Ze = dual.Z(e)
            # rho_g(1_{Z_e}) as the set where it equals 1, inside U_g
            moved = frozenset(
                y for y in dual.Z(tau.u[g]) if theta.maps[gi][y] in Ze
            )
            lhs = moved  # phi_g(1_{Z_f}) = f
            rhs = tau.apply_idempotent(g, e)
            if lhs != rhs:
                bad.append(f"{g}: e={sorted(e)} gives {sorted(lhs)} vs {sorted(rhs)}")
    return bad


def round_trip(a: FinitePartialAction, A: InducedAction) -> bool:
    return induced_theta(algebraic_presentation(A)) == a
