"""First-order deformations H + tℌ of a crossed homomorphism.

Everything is computed modulo t^2 by comparing the coefficients of t^0 and t^1
exactly; there is no dual-number arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from . import linalg
from .algebra import (
    Action,
    Bivector,
    LinearMap,
    check_crossed,
)
from .cochains import (
    coboundary,
    coboundary_matrix,
    delta_map,
    delta_matrix,
    induced_representation,
)
from .errors import InvalidBase, NotACocycle
from .multilinear import Cochain, Vec, axpy, mat_vec, unit, vsum


@dataclass
class DeformationCandidate:
    """The pair (H, ℌ) describing H_t = H + tℌ."""

    base: LinearMap
    direction: LinearMap


@dataclass
class Verdict:
    valid: bool
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.valid


def _require_base(H: LinearMap, act: Action) -> None:
    if check_crossed(H, act):
        raise InvalidBase("the base map is not a crossed homomorphism")


def two_cocycle_residual(c: DeformationCandidate, act: Action) -> Cochain:
    """t^1 coefficient of the crossed identity for H + tℌ, evaluated directly:

        ℌ[x,y,z] - rho(x,y)ℌz - rho(y,z)ℌx - rho(z,x)ℌy
                 - [ℌx,Hy,Hz] - [Hx,ℌy,Hz] - [Hx,Hy,ℌz]
    """
    g, h, rep = act.source, act.target, act.rep
    H, K = c.base, c.direction
    hc = [H.image(i) for i in range(g.dim)]
    kc = [K.image(i) for i in range(g.dim)]
    data = {}
    for i, j, k in itertools.combinations(range(g.dim), 3):
        r = K(g.bracket_basis(i, j, k))
        axpy(r, -1, vsum(
            rep.apply_basis(i, j, kc[k]),
            rep.apply_basis(j, k, kc[i]),
            rep.apply_basis(k, i, kc[j]),
            h.structure(kc[i], hc[j], hc[k]),
            h.structure(hc[i], kc[j], hc[k]),
            h.structure(hc[i], hc[j], kc[k]),
        ))
        if r:
            data[(i, j, k)] = r
    return Cochain(g.dim, h.dim, 1, data)


def check_infinitesimal(c: DeformationCandidate, act: Action) -> Verdict:
    """Whether ℌ is a 2-cocycle, by direct evaluation and by d_{rho_H} ℌ = 0.

    The verdict is the direct route; ``details`` carries both routes and
    whether they agree.
    """
    _require_base(c.base, act)
    direct = two_cocycle_residual(c, act)
    rho_h = induced_representation(c.base, act, check=False)
    via_d = coboundary(c.direction.as_cochain(), rho_h).materialize()
    ok_direct = direct.is_zero()
    ok_d = via_d.is_zero()
    return Verdict(
        ok_direct,
        sorted(direct.table().items()),
        {"direct": ok_direct, "coboundary": ok_d, "agree": ok_direct == ok_d},
    )


class SecondCohomology:
    """Z^2, B^2 and a canonical complement of B^2 in Z^2 for the complex of H.

    A cocycle is first reduced modulo the reduced row-echelon basis of B^2; the
    reduced cocycles span a space whose own echelon basis fixes the class
    coordinates (the values at its pivot positions).
    """

    def __init__(self, H: LinearMap, act: Action):
        _require_base(H, act)
        self.H = H
        self.act = act

    @cached_property
    def delta(self):
        return delta_matrix(self.H, self.act)

    @cached_property
    def d2(self):
        return coboundary_matrix(induced_representation(self.H, self.act, check=False), 1)

    @cached_property
    def cocycles(self) -> linalg.Subspace:
        return linalg.kernel(self.d2)

    @cached_property
    def coboundaries(self) -> linalg.Subspace:
        return linalg.column_space(self.delta)

    @cached_property
    def complement(self) -> linalg.Subspace:
        reduced = [self.coboundaries.reduce(z) for z in self.cocycles.basis]
        return linalg.span(reduced, self.cocycles.ambient_dim)

    @property
    def dim(self) -> int:
        return self.complement.dim

    def is_cocycle(self, K: LinearMap) -> bool:
        return self.cocycles.contains(K.as_cochain().coords())

    def class_of(self, K: LinearMap) -> tuple[Cochain, tuple]:
        """(normal-form representative, class coordinates) of the cocycle K."""
        v = K.as_cochain().coords()
        if not self.cocycles.contains(v):
            raise NotACocycle("the direction is not a 2-cocycle")
        w = self.coboundaries.reduce(v)
        coords = self.complement.coordinates(w)
        assert coords is not None
        rep = Cochain.from_coords(self.H.source.dim, self.H.target.dim, 0, w)
        return rep, coords

    def witness(self, K1: LinearMap, K2: LinearMap) -> Bivector | None:
        """A bivector X with delta(X) = K1 - K2, or None when none exists."""
        diff = (K1 - K2).as_cochain().coords()
        sol = linalg.solve(self.delta, diff)
        if sol is None:
            return None
        return Bivector.from_coords(self.H.source.dim, sol)


def cohomology_class(c: DeformationCandidate, act: Action,
                     space: SecondCohomology | None = None) -> tuple[Cochain, tuple]:
    space = space or SecondCohomology(c.base, act)
    return space.class_of(c.direction)


def _ad_bivector(act: Action, X: Bivector):
    g = act.source
    m = linalg.zeros(g.dim, g.dim)
    for (i, j), c in X.terms():
        m = m + g.ad(unit(i), unit(j)) * c
    return m


def _rho_bivector(act: Action, X: Bivector):
    m = linalg.zeros(act.target.dim, act.target.dim)
    for (i, j), c in X.terms():
        m = m + act.rep.basis_matrix(i, j) * c
    return m


def condition_one_t1(K1: LinearMap, K2: LinearMap, X: Bivector, H: LinearMap, act: Action) -> list[tuple[int, Vec]]:
    """t^1 part of (Id + t rho(X))(H + tℌ1) = (H + tℌ2)(Id + t ad_X), per basis z.

    The coefficient is ℌ1 z + rho(X)Hz - ℌ2 z - H[X, z]; returns (z, residual)
    wherever it is nonzero.
    """
    ad_x = _ad_bivector(act, X)
    rho_x = _rho_bivector(act, X)
    bad = []
    for z in range(act.source.dim):
        r = K1.image(z)
        axpy(r, 1, mat_vec(rho_x, H.image(z)))
        axpy(r, -1, K2.image(z))
        axpy(r, -1, H(mat_vec(ad_x, unit(z))))
        if r:
            bad.append((z, r))
    return bad


def condition_two_t1(X: Bivector, act: Action) -> list[tuple[int, int, int]]:
    """t^1 part of psi_h rho(a,b)u = rho(psi_g a, psi_g b) psi_h u for the first-order pair.

    That is rho(X)rho(a,b)u = rho([X,a],b)u + rho(a,[X,b])u + rho(a,b)rho(X)u.
    """
    g, h, rep = act.source, act.target, act.rep
    ad_x = _ad_bivector(act, X)
    rho_x = _rho_bivector(act, X)
    bad = []
    for a, b in itertools.combinations(range(g.dim), 2):
        xa = mat_vec(ad_x, unit(a))
        xb = mat_vec(ad_x, unit(b))
        for u in range(h.dim):
            lhs = mat_vec(rho_x, rep.apply_basis(a, b, unit(u)))
            rhs = vsum(
                rep.apply(xa, unit(b), unit(u)),
                rep.apply(unit(a), xb, unit(u)),
                rep.apply_basis(a, b, mat_vec(rho_x, unit(u))),
            )
            if lhs != rhs:
                bad.append((a, b, u))
    return bad


def derivation_t1(X: Bivector, act: Action) -> dict[str, bool]:
    """Whether Id + t ad_X and Id + t rho(X) are homomorphisms modulo t^2."""
    out = {}
    for name, alg, m in (("g", act.source, _ad_bivector(act, X)), ("h", act.target, _rho_bivector(act, X))):
        ok = True
        for i, j, k in itertools.combinations(range(alg.dim), 3):
            lhs = mat_vec(m, alg.bracket_basis(i, j, k))
            rhs = vsum(
                alg.structure(mat_vec(m, unit(i)), unit(j), unit(k)),
                alg.structure(unit(i), mat_vec(m, unit(j)), unit(k)),
                alg.structure(unit(i), unit(j), mat_vec(m, unit(k))),
            )
            if lhs != rhs:
                ok = False
                break
        out[name] = ok
    return out


def check_equivalence(K1: LinearMap, K2: LinearMap, X: Bivector, H: LinearMap, act: Action) -> Verdict:
    """Whether H + tℌ1 and H + tℌ2 are equivalent through the witness X.

    The verdict is the t^1 coefficient of the map condition, i.e.
    ℌ1 - ℌ2 = delta(X).  The t^1 coefficients of the action condition and of
    the two homomorphism conditions are reported in ``details`` only.
    """
    for K in (K1, K2):
        if not check_infinitesimal(DeformationCandidate(H, K), act).valid:
            raise NotACocycle("both directions must be 2-cocycles")
    bad = condition_one_t1(K1, K2, X, H, act)
    via_delta = (K1 - K2).as_cochain() == delta_map(H, act, X, check=False)
    cond2 = condition_two_t1(X, act)
    return Verdict(
        not bad,
        bad,
        {
            "delta_route": via_delta,
            "agree": via_delta == (not bad),
            "condition_two_t1": not cond2,
            "condition_two_violations": cond2,
            "derivations_t1": derivation_t1(X, act),
        },
    )


def find_witness(K1: LinearMap, K2: LinearMap, H: LinearMap, act: Action,
                 space: SecondCohomology | None = None) -> Bivector | None:
    space = space or SecondCohomology(H, act)
    return space.witness(K1, K2)


def trivial_deformation(c: DeformationCandidate, X: Bivector, act: Action) -> Verdict:
    zero = LinearMap.zero(c.base.source, c.base.target)
    return check_equivalence(c.direction, zero, X, c.base, act)
