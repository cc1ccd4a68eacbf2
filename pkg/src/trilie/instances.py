"""Random valid (algebra, action, crossed homomorphism) instances for testing.

Every generator returns objects that have been validated with the exact
checkers, so callers can rely on them as preconditions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .algebra import (
    Action,
    LinearMap,
    Representation,
    TriLieAlgebra,
    check_action,
    check_crossed,
    check_fundamental_identity,
    crossed_residual,
    example_algebra,
    example_crossed_map,
)
from .multilinear import Cochain

KINDS = ("example", "dim3", "simple4", "conjugated")


def rational(rng: np.random.Generator, bound: int = 3, max_den: int = 2, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, max_den + 1)))
        if x or not nonzero:
            return x


def random_matrix(rng: np.random.Generator, rows: int, cols: int, bound: int = 3) -> np.ndarray:
    return linalg.matrix([[rational(rng, bound) for _ in range(cols)] for _ in range(rows)], cols=cols)


def random_invertible(rng: np.random.Generator, n: int, bound: int = 2) -> np.ndarray:
    while True:
        m = random_matrix(rng, n, n, bound)
        if linalg.det(m) != 0:
            return m


def family_a11(a: np.ndarray) -> Fraction:
    """The value of a11 forced by the other entries for the example algebra."""
    A = lambda i, j: a[i - 1, j - 1]  # noqa: E731
    return (
        A(2, 2) + A(3, 3) + A(4, 4)
        + A(2, 3) * A(3, 4) * A(4, 2) + A(2, 4) * A(3, 2) * A(4, 3) + A(2, 2) * A(3, 3) * A(4, 4)
        - A(2, 4) * A(3, 3) * A(4, 2) - A(2, 2) * A(3, 4) * A(4, 3) - A(2, 3) * A(3, 2) * A(4, 4)
    )


def random_family_member(rng: np.random.Generator, bound: int = 3) -> np.ndarray:
    """A random 4x4 matrix satisfying the closed-form crossed constraints."""
    a = random_matrix(rng, 4, 4, bound)
    a[1, 0] = a[2, 0] = a[3, 0] = Fraction(0)
    a[0, 0] = family_a11(a)
    return a


def random_family_violator(rng: np.random.Generator, bound: int = 3) -> np.ndarray:
    """A family member with one constraint broken (a wrong a11 or a nonzero a21/a31/a41)."""
    a = random_family_member(rng, bound)
    slot = int(rng.integers(0, 4))
    a[slot, 0] = a[slot, 0] + rational(rng, bound, nonzero=True)
    return a


def random_automorphism(rng: np.random.Generator) -> np.ndarray:
    """An automorphism of the example algebra.

    An invertible block A on span(e2, e3, e4), arbitrary e1 components on
    their images, and e1 -> det(A) e1.
    """
    a = random_invertible(rng, 3)
    m = linalg.zeros(4, 4)
    m[1:, 1:] = a
    m[0, 0] = linalg.det(a)
    for j in range(1, 4):
        m[0, j] = rational(rng, 2)
    return m


@dataclass
class Instance:
    kind: str
    g: TriLieAlgebra
    act: Action
    H: LinearMap

    @property
    def total_dim(self) -> int:
        return self.g.dim + self.act.target.dim


def simple4() -> TriLieAlgebra:
    """The simple 4-dimensional algebra [e_i, e_j, e_k] = sign * e_l, {i,j,k,l} = {1..4}."""
    data = {}
    for l in range(4):
        t = tuple(i for i in range(4) if i != l)
        data[t] = {l: (-1) ** l}
    return TriLieAlgebra(4, data, name="A4")


def crossed_space_abelian(act: Action) -> linalg.Subspace:
    """All crossed homomorphisms when the target is abelian (the condition is then linear).

    Coordinates are the column-major entries of the matrix of H.
    """
    g, h = act.source, act.target
    if not h.is_abelian():
        raise ValueError("the crossed condition is only linear for an abelian target")
    n = g.dim * h.dim
    cols = []
    for c in range(n):
        m = linalg.zeros(h.dim, g.dim)
        m[c % h.dim, c // h.dim] = Fraction(1)
        cols.append(crossed_residual(LinearMap(g, h, m), act).coords())
    mat = linalg.zeros(len(cols[0]), n)
    for c, v in enumerate(cols):
        mat[:, c] = v
    return linalg.kernel(mat)


def _from_column_major(v, rows: int, cols: int) -> np.ndarray:
    return Cochain.from_coords(cols, rows, 0, list(v)).to_matrix()


def random_instance(rng: np.random.Generator, kind: str | None = None) -> Instance:
    kind = kind or KINDS[int(rng.integers(0, len(KINDS)))]
    if kind == "example":
        g = example_algebra()
        act = Action.adjoint(g)
        H = LinearMap(g, g, random_family_member(rng))
    elif kind == "dim3":
        while True:
            v = [rational(rng) for _ in range(3)]
            if any(v):
                break
        g = TriLieAlgebra(3, {(0, 1, 2): v}, name="g3")
        h = TriLieAlgebra.abelian(3, name="a3")
        act = Action(Representation.adjoint(g), h)
        space = crossed_space_abelian(act)
        coeffs = [rational(rng) for _ in space.basis]
        vec = linalg.vector([0] * (g.dim * h.dim))
        for c, b in zip(coeffs, space.basis):
            vec = vec + linalg.vector(b) * c
        H = LinearMap(g, h, _from_column_major(vec, h.dim, g.dim))
    elif kind == "simple4":
        base = simple4()
        a = random_invertible(rng, 4)
        b = random_invertible(rng, 4)
        g = base.transformed(a, name="g")
        h = base.transformed(b, name="h")
        act = Action.zero(g, h)
        H = LinearMap(g, h, linalg.matmul(b, linalg.inverse(a)))
    elif kind == "conjugated":
        a = random_invertible(rng, 4)
        g = example_algebra().transformed(a, name="g4'")
        act = Action.adjoint(g)
        h0 = random_family_member(rng)
        H = LinearMap(g, g, linalg.matmul(linalg.matmul(a, h0), linalg.inverse(a)))
    else:
        raise ValueError(f"unknown instance kind {kind!r}")
    inst = Instance(kind, g, act, H)
    assert not check_fundamental_identity(g)
    assert not check_fundamental_identity(act.target)
    assert not check_action(act)
    assert not check_crossed(H, act)
    return inst


def example_instance() -> Instance:
    g = example_algebra()
    return Instance("example", g, Action.adjoint(g), example_crossed_map(g))


def random_skew_bracket(rng: np.random.Generator, dim: int, density: float = 0.5) -> TriLieAlgebra:
    """Random structure constants with no validity guarantee."""
    data = {}
    for t in itertools.combinations(range(dim), 3):
        if rng.random() < density:
            v = {k: rational(rng) for k in range(dim)}
            v = {k: x for k, x in v.items() if x}
            if v:
                data[t] = v
    return TriLieAlgebra(dim, data, name="r")
