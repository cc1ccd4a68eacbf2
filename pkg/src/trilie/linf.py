"""Graded bracket on cochains of E = g ⊕ h and the derived L∞ brackets.

An element of degree p of the graded space is a ``Multilinear`` map on E with
``npairs == p``.  Products are computed lazily: a composite only evaluates
the basis tuples someone actually asks for, and nested brackets pull values
from their inner pieces on demand.

Relative cochains (arguments in g, values in h) are plain ``Multilinear``
maps with ``dim == dim g`` and ``out_dim == dim h``.  They are moved into the
big space by :func:`embed_relative` and back by :func:`project`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import Action, LinearMap, TriLieAlgebra, semidirect_structure
from .errors import DegreeMismatch, DimensionMismatch, NotMaurerCartan
from .multilinear import (
    Cochain,
    Lazy,
    Multilinear,
    Vec,
    axpy,
    flatten,
    linear_combination,
    pairs_of,
    random_cochain,
    restrict,
    shift,
    shuffles,
    unit,
)

HALF = Fraction(1, 2)
SIXTH = Fraction(1, 6)


def compose(P: Multilinear, Q: Multilinear) -> Lazy:
    """P∘Q, of degree p + q.

    For p >= 1, with X_i = x_i∧y_i and sigma running over shuffles:

        sum_{k=1..p} (-1)^((k-1)q) sum_{sigma in S(k-1,q)} sgn(sigma)
            [ P(X_s1..X_s(k-1), Q(X_sk..X_s(k+q-1), x_{k+q}) ∧ y_{k+q}, X_{k+q+1}.., x)
            + P(X_s1..X_s(k-1), x_{k+q} ∧ Q(X_sk..X_s(k+q-1), y_{k+q}), X_{k+q+1}.., x) ]
      + (-1)^(pq) sum_{sigma in S(p,q)} sgn(sigma) P(X_s1..X_sp, Q(X_s(p+1)..X_s(p+q), x))

    For p = 0 the map P is linear and P∘Q is P applied to the output of Q.
    """
    if P.dim != P.out_dim or Q.dim != Q.out_dim or P.dim != Q.dim:
        raise DimensionMismatch("graded elements must be endomorphism-valued cochains on one space")
    p, q = P.npairs, Q.npairs

    def value(idx: tuple[int, ...]) -> Vec:
        pairs = [(unit(a), unit(b)) for a, b in pairs_of(idx)]
        x = unit(idx[-1])
        if p == 0:
            return P(Q(*flatten(pairs, x)))
        acc: Vec = {}
        for k in range(1, p + 1):
            ks = -1 if ((k - 1) * q) % 2 else 1
            xk, yk = pairs[k + q - 1]
            tail = pairs[k + q:]
            for first, rest, s in shuffles(k - 1, q):
                lead = [pairs[i] for i in first]
                qargs = [pairs[i] for i in rest]
                v = Q(*flatten(qargs, xk))
                if v:
                    axpy(acc, ks * s, P(*flatten(lead + [(v, yk)] + tail, x)))
                v = Q(*flatten(qargs, yk))
                if v:
                    axpy(acc, ks * s, P(*flatten(lead + [(xk, v)] + tail, x)))
        sign = -1 if (p * q) % 2 else 1
        for first, rest, s in shuffles(p, q):
            v = Q(*flatten([pairs[i] for i in rest], x))
            if v:
                axpy(acc, sign * s, P(*flatten([pairs[i] for i in first], v)))
        return acc

    return Lazy(P.dim, P.dim, p + q, value)


def nr_bracket(P: Multilinear, Q: Multilinear) -> Lazy:
    """[P, Q] = P∘Q - (-1)^(pq) Q∘P."""
    if P.dim != Q.dim:
        raise DegreeMismatch("elements live on different spaces")
    pq = compose(P, Q)
    qp = compose(Q, P)
    sign = -1 if (P.npairs * Q.npairs) % 2 else 1

    def value(idx):
        out = dict(pq.value(idx))
        return axpy(out, -sign, qp.value(idx))

    return Lazy(P.dim, P.dim, P.npairs + Q.npairs, value)


def embed_relative(f: Multilinear, dim_g: int, dim_h: int) -> Cochain:
    """Extend f by zero: arguments projected to g, values placed in the h summand."""
    if f.dim != dim_g or f.out_dim != dim_h:
        raise DimensionMismatch("relative cochain has the wrong shape")
    data = {t: shift(v, dim_g) for t, v in f.table().items()}
    return Cochain(dim_g + dim_h, dim_g + dim_h, f.npairs, data)


def project(P: Multilinear, dim_g: int, dim_h: int) -> Cochain:
    """Restrict arguments to g and keep the h component of the value."""
    if P.dim != dim_g + dim_h:
        raise DimensionMismatch("element does not live on g ⊕ h")
    lazy = Lazy(dim_g, dim_h, P.npairs, lambda idx: restrict(P.at(idx), dim_g, dim_g + dim_h))
    return lazy.materialize()


def is_relative(P: Multilinear, dim_g: int) -> bool:
    """Whether P equals the embedding of its own projection."""
    dim_h = P.dim - dim_g
    return P == embed_relative(project(P, dim_g, dim_h), dim_g, dim_h)


@dataclass
class VData:
    """Cochains on g ⊕ h, the relative cochains F, the projection and Delta = pi+rho+mu."""

    g: TriLieAlgebra
    act: Action
    delta: Cochain

    @classmethod
    def from_action(cls, act: Action) -> "VData":
        return cls(act.source, act, semidirect_structure(act.source, act))

    @property
    def dim_g(self) -> int:
        return self.g.dim

    @property
    def dim_h(self) -> int:
        return self.act.target.dim

    def embed(self, f: Multilinear | LinearMap) -> Cochain:
        return embed_relative(as_relative(f), self.dim_g, self.dim_h)

    def project(self, P: Multilinear) -> Cochain:
        return project(P, self.dim_g, self.dim_h)

    def nested(self, *args: Multilinear | LinearMap) -> Multilinear:
        """[...[[Delta, a_1], a_2], ..., a_k] before projection."""
        acc: Multilinear = self.delta
        for a in args:
            acc = nr_bracket(acc, self.embed(a))
        return acc

    def bracket(self, *args: Multilinear | LinearMap) -> Cochain:
        """The k-th derived bracket l_k(a_1, ..., a_k)."""
        return self.project(self.nested(*args))

    def self_bracket_vanishes(self) -> bool:
        return nr_bracket(self.delta, self.delta).is_zero()

    def delta_in_kernel(self) -> bool:
        return self.project(self.delta).is_zero()


def as_relative(f: Multilinear | LinearMap) -> Multilinear:
    if isinstance(f, LinearMap):
        return Cochain.from_matrix(f.matrix)
    return f


def derived_bracket_l1(vd: VData, f) -> Cochain:
    return vd.bracket(f)


def derived_bracket_l3(vd: VData, P, Q, R) -> Cochain:
    return vd.bracket(P, Q, R)


def derived_bracket_lk_vanishes(vd: VData, k: int, samples: int, rng: np.random.Generator,
                                max_total_degree: int = 1) -> tuple[bool, list[int]]:
    """Evaluate l_k on random relative cochains; (all zero, indices of nonzero samples).

    Argument degrees are drawn so their sum stays at most ``max_total_degree``;
    the result then has degree at most ``1 + max_total_degree``.
    """
    if k == 1 or k == 3 or k < 1:
        raise ValueError("only k = 2 and k >= 4 are expected to vanish")
    bad = []
    for s in range(samples):
        budget = max_total_degree
        args = []
        for _ in range(k):
            d = int(rng.integers(0, budget + 1))
            budget -= d
            args.append(random_cochain(rng, vd.dim_g, vd.dim_h, d, density=0.6))
        if not vd.bracket(*args).is_zero():
            bad.append(s)
    return not bad, bad


def mc_residual(vd: VData, H) -> Cochain:
    """l_1(H) + (1/6) l_3(H, H, H) for a degree-0 relative cochain H."""
    H = as_relative(H)
    if H.npairs != 0:
        raise DegreeMismatch("the Maurer-Cartan equation is for degree-0 elements")
    return linear_combination([(1, vd.bracket(H)), (SIXTH, vd.bracket(H, H, H))])


class TwistedBrackets:
    """l^H_1, l^H_2, l^H_3 obtained by twisting with a Maurer-Cartan element H."""

    def __init__(self, vd: VData, H, check: bool = True):
        self.vd = vd
        self.H = as_relative(H)
        if check and not mc_residual(vd, self.H).is_zero():
            raise NotMaurerCartan("H does not solve the Maurer-Cartan equation")
        eh = vd.embed(self.H)
        # [Delta, H] and [[Delta, H], H] are degree 1 on E; materialise once
        self.d_h = nr_bracket(vd.delta, eh).materialize()
        self.d_hh = nr_bracket(self.d_h, eh).materialize()

    def l1(self, P) -> Cochain:
        """l_1(P) + 1/2 l_3(H, H, P)."""
        vd = self.vd
        eP = vd.embed(P)
        return linear_combination([
            (1, vd.project(nr_bracket(vd.delta, eP))),
            (HALF, vd.project(nr_bracket(self.d_hh, eP))),
        ])

    def l2(self, P, Q) -> Cochain:
        """l_3(H, P, Q)."""
        vd = self.vd
        return vd.project(nr_bracket(nr_bracket(self.d_h, vd.embed(P)), vd.embed(Q)))

    def l3(self, P, Q, R) -> Cochain:
        return self.vd.bracket(P, Q, R)


def twisted_brackets(vd: VData, H) -> TwistedBrackets:
    return TwistedBrackets(vd, H)


def twisted_mc_residual(vd: VData, H, H2, twisted: TwistedBrackets | None = None) -> Cochain:
    """l^H_1(H') + 1/2 l^H_2(H', H') + 1/6 l^H_3(H', H', H')."""
    tw = twisted or TwistedBrackets(vd, H)
    H2 = as_relative(H2)
    return linear_combination([
        (1, tw.l1(H2)),
        (HALF, tw.l2(H2, H2)),
        (SIXTH, tw.l3(H2, H2, H2)),
    ])


def random_graded(rng: np.random.Generator, dim: int, degree: int, density: float = 0.3) -> Cochain:
    """A random element of the graded space on a dim-``dim`` space."""
    return random_cochain(rng, dim, dim, degree, density=density)

