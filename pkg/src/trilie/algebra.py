"""3-Lie algebras, representations, actions and crossed homomorphisms.

Indices are 0-based throughout the library (``e1`` of the text format is
index 0).  Validators return lists of violations: an empty list means the
identity holds on every basis tuple, and since all identities involved are
multilinear that is the same as holding everywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import linalg
from .errors import (
    ConditionTwoFails,
    DimensionMismatch,
    InvalidAction,
    NotAHomomorphism,
    NotInvertible,
    WrongAlgebra,
)
from .linalg import Subspace, to_fraction
from .multilinear import Cochain, Vec, as_vec, axpy, mat_vec, scale, unit, vsum


class TriLieAlgebra:
    """A finite-dimensional skew trilinear bracket given by structure constants.

    Args:
        dim: dimension of the underlying space.
        brackets: mapping from index triples to the value of ``[e_i, e_j, e_k]``
            (a dense sequence or a sparse ``{index: coef}`` dict).  Triples in
            any order are accepted and normalised with the permutation sign.
        name: label used in reports and definition files.
    """

    def __init__(self, dim: int, brackets: Mapping | None = None, name: str = "g"):
        self.dim = dim
        self.name = name
        self.structure = Cochain(dim, dim, 1, brackets or {})

    @classmethod
    def from_structure(cls, structure: Cochain, name: str = "g") -> "TriLieAlgebra":
        if structure.npairs != 1 or structure.dim != structure.out_dim:
            raise DimensionMismatch("a 3-Lie structure is a map from the third exterior power to the space")
        alg = cls(structure.dim, name=name)
        alg.structure = structure
        return alg

    @classmethod
    def abelian(cls, dim: int, name: str = "a") -> "TriLieAlgebra":
        return cls(dim, {}, name)

    def bracket(self, x, y, z) -> Vec:
        return self.structure(as_vec(x), as_vec(y), as_vec(z))

    def bracket_basis(self, i: int, j: int, k: int) -> Vec:
        return self.structure.value((i, j, k))

    def structure_constants(self) -> dict[tuple[int, int, int], Vec]:
        return self.structure.table()

    def ad(self, x, y) -> np.ndarray:
        """Matrix of ad_{x,y} = [x, y, .]."""
        x, y = as_vec(x), as_vec(y)
        out = linalg.zeros(self.dim, self.dim)
        for k in range(self.dim):
            for r, c in self.structure(x, y, unit(k)).items():
                out[r, k] = c
        return out

    def is_abelian(self) -> bool:
        return not self.structure.table()

    def transformed(self, a: np.ndarray, name: str | None = None) -> "TriLieAlgebra":
        """The isomorphic algebra with bracket A[A^-1 x, A^-1 y, A^-1 z]."""
        ainv = linalg.inverse(a)
        cols = [as_vec(ainv[:, i]) for i in range(self.dim)]
        data = {}
        for t in itertools.combinations(range(self.dim), 3):
            v = self.structure(*(cols[i] for i in t))
            if v:
                data[t] = mat_vec(a, v)
        return TriLieAlgebra(self.dim, data, name or self.name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TriLieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.structure == other.structure

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TriLieAlgebra({self.name!r}, dim={self.dim})"


def example_algebra() -> TriLieAlgebra:
    """The 4-dimensional algebra whose only nonzero bracket is [e2, e3, e4] = e1."""
    return TriLieAlgebra(4, {(1, 2, 3): {0: 1}}, name="g4")


def example_crossed_map(g: TriLieAlgebra | None = None) -> "LinearMap":
    """e1 -> 0, e2 -> e2, e3 -> e3, e4 -> -e4 on the example algebra."""
    g = g or example_algebra()
    return LinearMap(g, g, linalg.matrix([[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]))


def check_fundamental_identity(a: TriLieAlgebra) -> list[tuple[int, int, int, int, int]]:
    """Basis 5-tuples (x1<x2, x3<x4<x5) at which the Fundamental Identity fails.

    Both sides are skew in (x1, x2) and in (x3, x4, x5), so these tuples
    exhaust the identity.  The list is in lexicographic order.
    """
    d = a.dim
    bad = []
    for x1, x2 in itertools.combinations(range(d), 2):
        e1, e2 = unit(x1), unit(x2)
        ad = {k: a.structure(e1, e2, unit(k)) for k in range(d)}
        for x3, x4, x5 in itertools.combinations(range(d), 3):
            lhs = a.structure(e1, e2, a.bracket_basis(x3, x4, x5))
            rhs = vsum(
                a.structure(ad[x3], unit(x4), unit(x5)),
                a.structure(unit(x3), ad[x4], unit(x5)),
                a.structure(unit(x3), unit(x4), ad[x5]),
            )
            if lhs != rhs:
                bad.append((x1, x2, x3, x4, x5))
    return bad


def is_3lie(a: TriLieAlgebra) -> bool:
    return not check_fundamental_identity(a)


def center(a: TriLieAlgebra) -> Subspace:
    """Solutions x of [x, e_j, e_k] = 0 for all j < k, as a single kernel."""
    d = a.dim
    pairs = list(itertools.combinations(range(d), 2))
    m = linalg.zeros(len(pairs) * d, d)
    for col in range(d):
        for n, (j, k) in enumerate(pairs):
            for r, c in a.bracket_basis(col, j, k).items():
                m[n * d + r, col] = c
    return linalg.kernel(m)


def derived_algebra(a: TriLieAlgebra) -> Subspace:
    vals = [a.bracket_basis(*t) for t in itertools.combinations(range(a.dim), 3)]
    return linalg.span([[v.get(r, 0) for r in range(a.dim)] for v in vals], a.dim)


# -- linear maps ---------------------------------------------------------------

class LinearMap:
    """A linear map between two algebras; ``matrix`` is target.dim x source.dim."""

    def __init__(self, source: TriLieAlgebra, target: TriLieAlgebra, matrix):
        m = matrix if isinstance(matrix, np.ndarray) and matrix.dtype == object else linalg.matrix(matrix)
        if m.shape != (target.dim, source.dim):
            raise DimensionMismatch(f"matrix shape {m.shape} does not match {target.dim}x{source.dim}")
        self.source = source
        self.target = target
        self.matrix = m

    @classmethod
    def zero(cls, source: TriLieAlgebra, target: TriLieAlgebra) -> "LinearMap":
        return cls(source, target, linalg.zeros(target.dim, source.dim))

    @classmethod
    def identity(cls, a: TriLieAlgebra) -> "LinearMap":
        return cls(a, a, linalg.identity(a.dim))

    def __call__(self, v) -> Vec:
        return mat_vec(self.matrix, as_vec(v))

    def image(self, i: int) -> Vec:
        return as_vec(self.matrix[:, i])

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if other.target.dim != self.source.dim:
            raise DimensionMismatch("maps are not composable")
        return LinearMap(other.source, self.target, linalg.matmul(self.matrix, other.matrix))

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self) -> "LinearMap":
        return LinearMap(self.source, self.target, -self.matrix)

    def __rmul__(self, c) -> "LinearMap":
        c = to_fraction(c)
        return LinearMap(self.source, self.target, self.matrix * c)

    def is_invertible(self) -> bool:
        n = self.matrix.shape[0]
        return self.matrix.shape == (n, n) and linalg.det(self.matrix) != 0

    def inverse(self) -> "LinearMap":
        if not self.is_invertible():
            raise NotInvertible("linear map is not invertible")
        return LinearMap(self.target, self.source, linalg.inverse(self.matrix))

    def as_cochain(self) -> Cochain:
        return Cochain.from_matrix(self.matrix)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and bool((self.matrix == other.matrix).all())

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"LinearMap({self.source.name} -> {self.target.name})"


def homomorphism_violations(f: LinearMap) -> list[tuple[int, int, int]]:
    """Basis triples where f[x,y,z] != [fx,fy,fz]."""
    g, h = f.source, f.target
    cols = [f.image(i) for i in range(g.dim)]
    bad = []
    for i, j, k in itertools.combinations(range(g.dim), 3):
        if f(g.bracket_basis(i, j, k)) != h.structure(cols[i], cols[j], cols[k]):
            bad.append((i, j, k))
    return bad


def is_homomorphism(f: LinearMap) -> bool:
    return not homomorphism_violations(f)


# -- representations and actions ----------------------------------------------

class Representation:
    """A skew bilinear map rho from pairs of g to endomorphisms of a space V.

    Args:
        algebra: the 3-Lie algebra g.
        space_dim: dim V.
        rho: mapping from pairs (i, j) to ``space_dim`` square matrices giving
            rho(e_i, e_j).  Pairs with i > j are folded in with a sign; missing
            pairs are zero.
    """

    def __init__(self, algebra: TriLieAlgebra, space_dim: int, rho: Mapping | None = None):
        self.algebra = algebra
        self.space_dim = space_dim
        self.rho: dict[tuple[int, int], np.ndarray] = {}
        for (i, j), m in (rho or {}).items():
            mm = m if isinstance(m, np.ndarray) and m.dtype == object else linalg.matrix(m)
            if mm.shape != (space_dim, space_dim):
                raise DimensionMismatch(f"rho({i},{j}) has shape {mm.shape}, expected {space_dim}x{space_dim}")
            if not (0 <= i < algebra.dim and 0 <= j < algebra.dim):
                raise DimensionMismatch(f"pair ({i},{j}) outside the algebra")
            if i == j:
                if not linalg.is_zero(mm):
                    raise ValueError("rho(x, x) must vanish")
                continue
            key, sign = ((i, j), 1) if i < j else ((j, i), -1)
            prev = self.rho.get(key, linalg.zeros(space_dim, space_dim))
            self.rho[key] = prev + mm * sign
        self._cols = {
            key: [as_vec(m[:, k]) for k in range(space_dim)] for key, m in self.rho.items()
        }

    @classmethod
    def adjoint(cls, a: TriLieAlgebra) -> "Representation":
        return cls(a, a.dim, {(i, j): a.ad(unit(i), unit(j)) for i, j in itertools.combinations(range(a.dim), 2)})

    @classmethod
    def zero(cls, a: TriLieAlgebra, space_dim: int) -> "Representation":
        return cls(a, space_dim, {})

    def basis_matrix(self, i: int, j: int) -> np.ndarray:
        if i == j:
            return linalg.zeros(self.space_dim, self.space_dim)
        if i < j:
            return self.rho.get((i, j), linalg.zeros(self.space_dim, self.space_dim))
        return -self.basis_matrix(j, i)

    def matrix(self, x, y) -> np.ndarray:
        x, y = as_vec(x), as_vec(y)
        out = linalg.zeros(self.space_dim, self.space_dim)
        for a, xa in x.items():
            for b, yb in y.items():
                if a != b:
                    out = out + self.basis_matrix(a, b) * (xa * yb)
        return out

    def apply_basis(self, i: int, j: int, v: Mapping) -> Vec:
        if i == j:
            return {}
        key, sign = ((i, j), 1) if i < j else ((j, i), -1)
        cols = self._cols.get(key)
        if cols is None:
            return {}
        acc: Vec = {}
        for k, c in v.items():
            axpy(acc, sign * c, cols[k])
        return acc

    def apply(self, x: Mapping, y: Mapping, v: Mapping) -> Vec:
        """rho(x, y) v for sparse vectors."""
        acc: Vec = {}
        for a, xa in x.items():
            for b, yb in y.items():
                if a != b:
                    axpy(acc, xa * yb, self.apply_basis(a, b, v))
        return acc

    def __repr__(self) -> str:
        return f"Representation({self.algebra.name}, space_dim={self.space_dim})"


def check_representation(r: Representation) -> list[tuple[str, tuple[int, int, int, int]]]:
    """Violations of the two representation identities on basis 4-tuples.

    Returns pairs ``(label, (x1, x2, x3, x4))`` with label ``"rep-1"`` for

        rho(x1,x2)rho(x3,x4) = rho([x1,x2,x3],x4) + rho(x3,[x1,x2,x4]) + rho(x3,x4)rho(x1,x2)

    (checked for x1<x2, x3<x4) and ``"rep-2"`` for

        rho(x1,[x2,x3,x4]) = rho(x3,x4)rho(x1,x2) - rho(x2,x4)rho(x1,x3) + rho(x2,x3)rho(x1,x4)

    (checked for all x1 and x2<x3<x4).
    """
    g = r.algebra
    d = g.dim
    for m in r.rho.values():
        if m.shape != (r.space_dim, r.space_dim):
            raise DimensionMismatch("representation matrices have inconsistent sizes")
    mats = {(a, b): r.basis_matrix(a, b) for a in range(d) for b in range(d)}
    bad = []
    pairs = list(itertools.combinations(range(d), 2))
    for (x1, x2), (x3, x4) in itertools.product(pairs, repeat=2):
        lhs = linalg.matmul(mats[x1, x2], mats[x3, x4]) - linalg.matmul(mats[x3, x4], mats[x1, x2])
        rhs = r.matrix(g.bracket_basis(x1, x2, x3), unit(x4)) + r.matrix(unit(x3), g.bracket_basis(x1, x2, x4))
        if not linalg.is_zero(lhs - rhs):
            bad.append(("rep-1", (x1, x2, x3, x4)))
    for x1 in range(d):
        for x2, x3, x4 in itertools.combinations(range(d), 3):
            lhs = r.matrix(unit(x1), g.bracket_basis(x2, x3, x4))
            rhs = (
                linalg.matmul(mats[x3, x4], mats[x1, x2])
                - linalg.matmul(mats[x2, x4], mats[x1, x3])
                + linalg.matmul(mats[x2, x3], mats[x1, x4])
            )
            if not linalg.is_zero(lhs - rhs):
                bad.append(("rep-2", (x1, x2, x3, x4)))
    return bad


@dataclass
class Action:
    """A representation of g on the underlying space of another 3-Lie algebra h."""

    rep: Representation
    target: TriLieAlgebra

    def __post_init__(self):
        if self.rep.space_dim != self.target.dim:
            raise DimensionMismatch("representation space and target algebra differ in dimension")

    @property
    def source(self) -> TriLieAlgebra:
        return self.rep.algebra

    @classmethod
    def adjoint(cls, a: TriLieAlgebra) -> "Action":
        """ad of a on itself; a representation always, an action only sometimes."""
        return cls(Representation.adjoint(a), a)

    @classmethod
    def zero(cls, g: TriLieAlgebra, h: TriLieAlgebra) -> "Action":
        return cls(Representation.zero(g, h.dim), h)

    def __call__(self, x, y, u) -> Vec:
        return self.rep.apply(as_vec(x), as_vec(y), as_vec(u))


def check_action(act: Action) -> list[tuple[str, tuple[int, ...]]]:
    """Violations of the action axioms.

    ``("center", (i, j, u))``: rho(e_i, e_j) e_u is not central in h.
    ``("bracket", (i, j, u, v, w))``: rho(e_i, e_j)[e_u, e_v, e_w]_h != 0.
    """
    g, h = act.source, act.target
    if act.rep.space_dim != h.dim:
        raise DimensionMismatch("representation space and target algebra differ in dimension")
    z = center(h)
    bad = []
    for i, j in itertools.combinations(range(g.dim), 2):
        for u in range(h.dim):
            v = act.rep.apply_basis(i, j, unit(u))
            if v and not z.contains([v.get(k, 0) for k in range(h.dim)]):
                bad.append(("center", (i, j, u)))
    for i, j in itertools.combinations(range(g.dim), 2):
        for t in itertools.combinations(range(h.dim), 3):
            if act.rep.apply_basis(i, j, h.bracket_basis(*t)):
                bad.append(("bracket", (i, j) + t))
    return bad


def semidirect_structure(g: TriLieAlgebra, act: Action) -> Cochain:
    """Structure table of the bracket on g + h (g first, then h) built from pi, rho, mu.

    [x+u, y+v, z+w] = [x,y,z]_g + rho(x,y)w + rho(y,z)u + rho(z,x)v + [u,v,w]_h.
    No validity check; this is also the element pi+rho+mu of the graded algebra.
    """
    h = act.target
    dg, dh = g.dim, h.dim
    data: dict[tuple[int, int, int], Vec] = {}
    for t, v in g.structure_constants().items():
        data[t] = dict(v)
    for t, v in h.structure_constants().items():
        data[tuple(k + dg for k in t)] = {k + dg: c for k, c in v.items()}
    # two g entries and one h entry: rho(x, y) w
    for i, j in itertools.combinations(range(dg), 2):
        for w in range(dh):
            v = act.rep.apply_basis(i, j, unit(w))
            if v:
                data[(i, j, w + dg)] = {k + dg: c for k, c in v.items()}
    return Cochain(dg + dh, dg + dh, 1, data)


def semidirect_product(g: TriLieAlgebra, act: Action, check: bool = True) -> TriLieAlgebra:
    if act.source is not g and act.source != g:
        raise DimensionMismatch("the action is not an action of this algebra")
    if check and check_action(act):
        raise InvalidAction("the representation is not an action")
    return TriLieAlgebra.from_structure(semidirect_structure(g, act), name=f"{g.name}x{act.target.name}")


# -- bivectors -----------------------------------------------------------------

class Bivector:
    """An element of g ∧ g with coordinates on e_i ∧ e_j, i < j."""

    def __init__(self, dim: int, coeffs: Mapping[tuple[int, int], object] | None = None):
        self.dim = dim
        self.coeffs: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in (coeffs or {}).items():
            c = to_fraction(c)
            if i == j or c == 0:
                continue
            key, s = ((i, j), 1) if i < j else ((j, i), -1)
            val = self.coeffs.get(key, Fraction(0)) + s * c
            if val:
                self.coeffs[key] = val
            else:
                self.coeffs.pop(key, None)

    @classmethod
    def from_coords(cls, dim: int, coords: Sequence) -> "Bivector":
        pairs = list(itertools.combinations(range(dim), 2))
        return cls(dim, {p: c for p, c in zip(pairs, coords)})

    def coords(self) -> np.ndarray:
        return linalg.vector([self.coeffs.get(p, 0) for p in itertools.combinations(range(self.dim), 2)])

    def terms(self):
        return sorted(self.coeffs.items())

    def __neg__(self) -> "Bivector":
        return Bivector(self.dim, {k: -c for k, c in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Bivector) and self.dim == other.dim and self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Bivector({self.terms()})"


# -- crossed homomorphisms -----------------------------------------------------

def _check_crossed_shapes(H: LinearMap, act: Action) -> None:
    if H.source.dim != act.source.dim or H.target.dim != act.target.dim:
        raise DimensionMismatch("map does not go from the acting algebra to the target algebra")


def crossed_residual(H: LinearMap, act: Action) -> Cochain:
    """The skew trilinear map

        (x,y,z) -> H[x,y,z]_g - rho(x,y)Hz - rho(y,z)Hx - rho(z,x)Hy - [Hx,Hy,Hz]_h

    as a degree-1 cochain on g with values in h.
    """
    _check_crossed_shapes(H, act)
    g, h, rep = act.source, act.target, act.rep
    cols = [H.image(i) for i in range(g.dim)]
    data = {}
    for i, j, k in itertools.combinations(range(g.dim), 3):
        r = H(g.bracket_basis(i, j, k))
        axpy(r, -1, rep.apply_basis(i, j, cols[k]))
        axpy(r, -1, rep.apply_basis(j, k, cols[i]))
        axpy(r, -1, rep.apply_basis(k, i, cols[j]))
        axpy(r, -1, h.structure(cols[i], cols[j], cols[k]))
        if r:
            data[(i, j, k)] = r
    return Cochain(g.dim, h.dim, 1, data)


def check_crossed(H: LinearMap, act: Action) -> list[tuple[tuple[int, int, int], Vec]]:
    """Basis triples (i<j<k) with a nonzero crossed-homomorphism residual."""
    return sorted(crossed_residual(H, act).table().items())


def is_crossed(H: LinearMap, act: Action) -> bool:
    return not check_crossed(H, act)


def family_constraint_residuals(a: np.ndarray) -> dict[str, Fraction]:
    """Residuals of the closed-form conditions for the example algebra with ad.

    With H e_j = sum_i a_ij e_i, the map is crossed iff a21 = a31 = a41 = 0 and

        a11 = a22 + a33 + a44 + a23 a34 a42 + a24 a32 a43 + a22 a33 a44
              - a24 a33 a42 - a22 a34 a43 - a23 a32 a44.
    """
    A = lambda i, j: to_fraction(a[i - 1, j - 1])  # noqa: E731
    rhs = (
        A(2, 2) + A(3, 3) + A(4, 4)
        + A(2, 3) * A(3, 4) * A(4, 2) + A(2, 4) * A(3, 2) * A(4, 3) + A(2, 2) * A(3, 3) * A(4, 4)
        - A(2, 4) * A(3, 3) * A(4, 2) - A(2, 2) * A(3, 4) * A(4, 3) - A(2, 3) * A(3, 2) * A(4, 4)
    )
    return {"a11": A(1, 1) - rhs, "a21": A(2, 1), "a31": A(3, 1), "a41": A(4, 1)}


def check_crossed_family_constraints(H: LinearMap) -> list[str]:
    """Names of the violated closed-form constraints (empty list: crossed)."""
    ex = example_algebra()
    if H.source != ex or H.target != ex:
        raise WrongAlgebra("the closed-form constraints only describe the 4-dimensional example algebra")
    return [k for k, v in family_constraint_residuals(H.matrix).items() if v != 0]


def graph_embedding(H: LinearMap, act: Action) -> tuple[LinearMap, bool]:
    """phi_H(x) = (x, Hx) into the semidirect product, and whether it is a homomorphism."""
    _check_crossed_shapes(H, act)
    g = act.source
    sd = TriLieAlgebra.from_structure(semidirect_structure(g, act), name=f"{g.name}x{act.target.name}")
    m = linalg.zeros(sd.dim, g.dim)
    m[: g.dim, :] = linalg.identity(g.dim)
    m[g.dim:, :] = H.matrix
    phi = LinearMap(g, sd, m)
    return phi, is_homomorphism(phi)


def check_crossed_hom_morphism(H: LinearMap, H2: LinearMap, psi_g: LinearMap, psi_h: LinearMap,
                               act: Action) -> list[tuple[str, tuple[int, ...]]]:
    """Violations of the two conditions making (psi_g, psi_h) a morphism from H to H2.

    ``("condition-1", (i,))``: psi_h H e_i != H2 psi_g e_i.
    ``("condition-2", (i, j, u))``: psi_h rho(e_i,e_j) e_u != rho(psi_g e_i, psi_g e_j) psi_h e_u.
    """
    for name, psi in (("psi_g", psi_g), ("psi_h", psi_h)):
        if homomorphism_violations(psi):
            raise NotAHomomorphism(f"{name} is not a 3-Lie algebra homomorphism")
    bad: list[tuple[str, tuple[int, ...]]] = []
    lhs = linalg.matmul(psi_h.matrix, H.matrix)
    rhs = linalg.matmul(H2.matrix, psi_g.matrix)
    for i in range(H.source.dim):
        if not linalg.is_zero(lhs[:, i] - rhs[:, i]):
            bad.append(("condition-1", (i,)))
    bad += [("condition-2", t) for t in condition_two_violations(psi_g, psi_h, act)]
    return bad


def condition_two_violations(psi_g: LinearMap, psi_h: LinearMap, act: Action) -> list[tuple[int, int, int]]:
    g, h = act.source, act.target
    gcols = [psi_g.image(i) for i in range(g.dim)]
    bad = []
    for i, j in itertools.combinations(range(g.dim), 2):
        for u in range(h.dim):
            lhs = psi_h(act.rep.apply_basis(i, j, unit(u)))
            rhs = act.rep.apply(gcols[i], gcols[j], psi_h.image(u))
            if lhs != rhs:
                bad.append((i, j, u))
    return bad


def conjugate_crossed(H: LinearMap, psi_g: LinearMap, psi_h: LinearMap, act: Action) -> LinearMap:
    """psi_h^{-1} H psi_g, a crossed homomorphism whenever H is one."""
    if not psi_g.is_invertible() or not psi_h.is_invertible():
        raise NotInvertible("psi_g and psi_h must be invertible")
    for name, psi in (("psi_g", psi_g), ("psi_h", psi_h)):
        if homomorphism_violations(psi):
            raise NotAHomomorphism(f"{name} is not a 3-Lie algebra isomorphism")
    if condition_two_violations(psi_g, psi_h, act):
        raise ConditionTwoFails("psi_h rho(x,y) u != rho(psi_g x, psi_g y) psi_h u")
    return psi_h.inverse().compose(H).compose(psi_g)


# -- relative Rota-Baxter operators ----------------------------------------------

def check_rota_baxter(T: LinearMap, act: Action, weight=1) -> list[tuple[tuple[int, int, int], Vec]]:
    """Basis triples u<v<w of h where

        [Tu,Tv,Tw]_g = T(rho(Tu,Tv)w + rho(Tv,Tw)u + rho(Tw,Tu)v + weight [u,v,w]_h)

    fails, with the residual (left minus right).
    """
    g, h, rep = act.source, act.target, act.rep
    if T.source.dim != h.dim or T.target.dim != g.dim:
        raise DimensionMismatch("a relative Rota-Baxter operator goes from h to g")
    lam = to_fraction(weight)
    cols = [T.image(i) for i in range(h.dim)]
    bad = []
    for u, v, w in itertools.combinations(range(h.dim), 3):
        inner = vsum(
            rep.apply(cols[u], cols[v], unit(w)),
            rep.apply(cols[v], cols[w], unit(u)),
            rep.apply(cols[w], cols[u], unit(v)),
            scale(lam, h.bracket_basis(u, v, w)),
        )
        r = g.structure(cols[u], cols[v], cols[w])
        axpy(r, -1, T(inner))
        if r:
            bad.append(((u, v, w), r))
    return bad


def crossed_rb_correspondence(H: LinearMap, act: Action) -> tuple[bool, bool]:
    """(H is crossed, H^{-1} is a relative Rota-Baxter operator of weight 1)."""
    if not H.is_invertible():
        raise NotInvertible("the correspondence needs an invertible map")
    return is_crossed(H, act), not check_rota_baxter(H.inverse(), act, 1)
