"""Cochains of a 3-Lie algebra, the coboundary operator and the crossed complex.

Degree conventions: the n-cochains of g with values in V take n - 1 skew
pairs followed by one vector, so ``Multilinear.npairs == n - 1``.  The complex
of a crossed homomorphism H starts with g∧g in degree 1 (differential delta)
and continues with the (n-1)-cochains in degree n (differential d_{rho_H}).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import linalg
from .algebra import (
    Action,
    Bivector,
    LinearMap,
    Representation,
    check_crossed,
    check_crossed_hom_morphism,
)
from .errors import (
    DegreeOutOfRange,
    DimensionMismatch,
    NotACrossedHomomorphism,
    NotAHomomorphism,
    NotAMorphism,
    NotInvertible,
)
from .multilinear import (
    Cochain,
    Lazy,
    Multilinear,
    Vec,
    as_vec,
    axpy,
    basis_cochains,
    basis_tuples,
    flatten,
    mat_vec,
    pairs_of,
    unit,
)


@dataclass(frozen=True)
class CochainSpace:
    """The n-cochains of a dim-``dim`` algebra with values in a ``values_dim`` space."""

    dim: int
    values_dim: int
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise DegreeOutOfRange("cochain degrees start at 1")

    @property
    def npairs(self) -> int:
        return self.degree - 1

    @property
    def size(self) -> int:
        if self.degree == 1:
            return self.dim * self.values_dim
        return comb(self.dim, 2) ** (self.degree - 2) * comb(self.dim, 3) * self.values_dim

    def basis_tuples(self):
        return basis_tuples(self.dim, self.npairs)

    def basis(self):
        return basis_cochains(self.dim, self.values_dim, self.npairs)

    def from_coords(self, coords) -> Cochain:
        return Cochain.from_coords(self.dim, self.values_dim, self.npairs, coords)


def coboundary(f: Multilinear, rep: Representation) -> Lazy:
    """d f for an n-cochain f (n - 1 pairs); the result has n pairs.

    With X_j = x_j ∧ y_j and hats marking omission,

        (df)(X_1..X_n, x) = sum_{j<k} (-1)^j f(..^X_j.., [x_j,y_j,x_k]∧y_k + x_k∧[x_j,y_j,y_k], ..)
                          + sum_j (-1)^j f(..^X_j.., [x_j,y_j,x])
                          + sum_j (-1)^(j+1) rho(x_j,y_j) f(..^X_j.., x)
                          + (-1)^(n+1) (rho(y_n,x) f(X_1..X_{n-1}, x_n) + rho(x,x_n) f(X_1..X_{n-1}, y_n))

    with j, k counted from 1.
    """
    g = rep.algebra
    if f.dim != g.dim or f.out_dim != rep.space_dim:
        raise DimensionMismatch("cochain and representation do not match")
    n = f.npairs + 1

    def value(idx: tuple[int, ...]) -> Vec:
        pairs = [(unit(a), unit(b)) for a, b in pairs_of(idx)]
        last = unit(idx[-1])
        br = g.structure
        acc: Vec = {}
        for j in range(n):
            sj = -1 if (j + 1) % 2 else 1
            xj, yj = pairs[j]
            rest = pairs[:j] + pairs[j + 1:]
            for k in range(j + 1, n):
                xk, yk = pairs[k]
                pos = k - 1
                a = list(rest)
                a[pos] = (br(xj, yj, xk), yk)
                axpy(acc, sj, f(*flatten(a, last)))
                a[pos] = (xk, br(xj, yj, yk))
                axpy(acc, sj, f(*flatten(a, last)))
            axpy(acc, sj, f(*flatten(rest, br(xj, yj, last))))
            inner = f(*flatten(rest, last))
            if inner:
                axpy(acc, -sj, rep.apply(xj, yj, inner))
        xn, yn = pairs[n - 1]
        head = pairs[: n - 1]
        s = 1 if (n + 1) % 2 == 0 else -1
        axpy(acc, s, rep.apply(yn, last, f(*flatten(head, xn))))
        axpy(acc, s, rep.apply(last, xn, f(*flatten(head, yn))))
        return acc

    return Lazy(f.dim, f.out_dim, n, value)


def coboundary_matrix(rep: Representation, n: int) -> np.ndarray:
    """Matrix of d from n-cochains to (n+1)-cochains, built column by column."""
    if n < 1:
        raise DegreeOutOfRange("coboundary is defined from degree 1 on")
    src = CochainSpace(rep.algebra.dim, rep.space_dim, n)
    dst = CochainSpace(rep.algebra.dim, rep.space_dim, n + 1)
    m = linalg.zeros(dst.size, src.size)
    for c, f in enumerate(src.basis()):
        m[:, c] = coboundary(f, rep).coords()
    return m


def induced_representation(H: LinearMap, act: Action, check: bool = True) -> Representation:
    """rho_H(x, y) = rho(x, y) + [Hx, Hy, .]_h."""
    if check and check_crossed(H, act):
        raise NotACrossedHomomorphism("H is not a crossed homomorphism for this action")
    g, h = act.source, act.target
    mats = {}
    for i, j in itertools.combinations(range(g.dim), 2):
        mats[(i, j)] = act.rep.basis_matrix(i, j) + h.ad(H.image(i), H.image(j))
    return Representation(g, h.dim, mats)


def _delta_basis(H: LinearMap, act: Action, i: int, j: int) -> Cochain:
    g, h, rep = act.source, act.target, act.rep
    hi, hj = H.image(i), H.image(j)
    data = {}
    for z in range(g.dim):
        hz = H.image(z)
        v = rep.apply(unit(j), unit(z), hi)
        axpy(v, 1, rep.apply(unit(z), unit(i), hj))
        axpy(v, 1, h.structure(hi, hj, hz))
        if v:
            data[(z,)] = v
    return Cochain(g.dim, h.dim, 0, data)


def delta_map(H: LinearMap, act: Action, X: Bivector, check: bool = True) -> Cochain:
    """delta(x∧y) z = rho(y,z)Hx + rho(z,x)Hy + [Hx,Hy,Hz]_h, extended linearly in X."""
    if check and check_crossed(H, act):
        raise NotACrossedHomomorphism("H is not a crossed homomorphism for this action")
    if X.dim != act.source.dim:
        raise DimensionMismatch("bivector lives in the wrong algebra")
    g, h = act.source, act.target
    out = Cochain(g.dim, h.dim, 0, {})
    for (i, j), c in X.terms():
        out = out + c * _delta_basis(H, act, i, j)
    return out


def delta_matrix(H: LinearMap, act: Action) -> np.ndarray:
    """Matrix of delta from g∧g (basis e_i∧e_j, i<j) to Hom(g, h)."""
    g, h = act.source, act.target
    pairs = list(itertools.combinations(range(g.dim), 2))
    m = linalg.zeros(g.dim * h.dim, len(pairs))
    for c, (i, j) in enumerate(pairs):
        m[:, c] = _delta_basis(H, act, i, j).coords()
    return m


@dataclass
class CrossedComplex:
    """Differentials ∂_1 .. ∂_max of the complex of a crossed homomorphism."""

    H: LinearMap
    act: Action
    rho_H: Representation
    max_degree: int
    differentials: dict[int, np.ndarray] = field(default_factory=dict)
    square_zero: dict[int, bool] = field(default_factory=dict)

    def space_dim(self, n: int) -> int:
        g, h = self.act.source, self.act.target
        if n == 1:
            return comb(g.dim, 2)
        return CochainSpace(g.dim, h.dim, n - 1).size

    def differential(self, n: int) -> np.ndarray:
        if n not in self.differentials:
            raise DegreeOutOfRange(f"∂_{n} was not computed (max degree {self.max_degree})")
        return self.differentials[n]

    def cochain_space(self, n: int) -> CochainSpace:
        """For n >= 2 the cochains of degree n of the complex."""
        if n < 2:
            raise DegreeOutOfRange("degree 1 of the crossed complex is g∧g, not a cochain space")
        return CochainSpace(self.act.source.dim, self.act.target.dim, n - 1)


def crossed_complex(H: LinearMap, act: Action, max_degree: int = 3) -> CrossedComplex:
    if max_degree < 1:
        raise DegreeOutOfRange("max_degree must be at least 1")
    if check_crossed(H, act):
        raise NotACrossedHomomorphism("H is not a crossed homomorphism for this action")
    rho_h = induced_representation(H, act, check=False)
    cx = CrossedComplex(H, act, rho_h, max_degree)
    cx.differentials[1] = delta_matrix(H, act)
    for n in range(2, max_degree + 1):
        cx.differentials[n] = coboundary_matrix(rho_h, n - 1)
    for n in range(1, max_degree):
        prod = linalg.matmul(cx.differentials[n + 1], cx.differentials[n])
        cx.square_zero[n] = linalg.is_zero(prod)
    return cx


@dataclass(frozen=True)
class CohomologyDims:
    degree: int
    cochains: int
    cocycles: int
    coboundaries: int

    @property
    def cohomology(self) -> int:
        return self.cocycles - self.coboundaries


def cohomology_dims(c: CrossedComplex, n: int) -> CohomologyDims:
    """dim Z^n = dim ker ∂_n, dim B^n = rank ∂_{n-1} (B^1 = 0), by Gauss-Jordan."""
    if n < 1 or n > c.max_degree:
        raise DegreeOutOfRange(f"degree {n} outside 1..{c.max_degree}")
    z = linalg.kernel(c.differential(n))
    if n == 1:
        b = linalg.Subspace(z.ambient_dim, ())
    else:
        b = linalg.column_space(c.differential(n - 1))
    h = linalg.quotient_dim(z, b)
    return CohomologyDims(n, c.space_dim(n), z.dim, z.dim - h)


def cohomology_dims_bareiss(c: CrossedComplex, n: int) -> CohomologyDims:
    """Same numbers through rank-nullity and fraction-free elimination."""
    if n < 1 or n > c.max_degree:
        raise DegreeOutOfRange(f"degree {n} outside 1..{c.max_degree}")
    dn = c.differential(n)
    cocycles = dn.shape[1] - linalg.bareiss_rank(dn)
    coboundaries = 0 if n == 1 else linalg.bareiss_rank(c.differential(n - 1))
    return CohomologyDims(n, c.space_dim(n), cocycles, coboundaries)


def cohomology_table(c: CrossedComplex) -> list[CohomologyDims]:
    return [cohomology_dims(c, n) for n in range(1, c.max_degree + 1)]


def transport_cochain(omega: Multilinear, psi_g: LinearMap, psi_h: LinearMap, H: LinearMap,
                      H2: LinearMap, act: Action) -> Cochain:
    """p(omega)(args) = psi_h(omega(psi_g^{-1} args)), for cochains of degree >= 2 of the complex."""
    if not psi_g.is_invertible():
        raise NotAMorphism("psi_g must be invertible")
    try:
        bad = check_crossed_hom_morphism(H, H2, psi_g, psi_h, act)
    except NotAHomomorphism as e:
        raise NotAMorphism(str(e)) from e
    if bad:
        raise NotAMorphism(f"(psi_g, psi_h) is not a morphism of crossed homomorphisms: {bad[:3]}")
    try:
        ginv = psi_g.inverse().matrix
    except NotInvertible as e:  # pragma: no cover - guarded above
        raise NotAMorphism(str(e)) from e
    cols = [as_vec(ginv[:, i]) for i in range(omega.dim)]

    def value(idx):
        return mat_vec(psi_h.matrix, omega(*(cols[i] for i in idx)))

    return Lazy(omega.dim, omega.out_dim, omega.npairs, value).materialize()

