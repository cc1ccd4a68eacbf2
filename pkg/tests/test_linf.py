from __future__ import annotations

import itertools

import numpy as np
import pytest

from trilie import linalg
from trilie.algebra import (
    Action,
    LinearMap,
    TriLieAlgebra,
    check_fundamental_identity,
    crossed_residual,
    example_algebra,
    example_crossed_map,
    is_crossed,
)
from trilie.errors import DegreeMismatch, NotMaurerCartan
from trilie.instances import random_family_member, random_family_violator, random_instance, random_skew_bracket
from trilie.linf import (
    TwistedBrackets,
    VData,
    compose,
    derived_bracket_l1,
    derived_bracket_l3,
    derived_bracket_lk_vanishes,
    embed_relative,
    is_relative,
    mc_residual,
    nr_bracket,
    project,
    twisted_mc_residual,
)
from trilie.multilinear import Cochain, random_cochain, unit, vsum


@pytest.fixture(scope="module")
def example():
    g = example_algebra()
    act = Action.adjoint(g)
    return g, act, example_crossed_map(g), VData.from_action(act)


def identity_cochain(n):
    return Cochain.from_matrix(linalg.identity(n))


# -- composition and the graded bracket -----------------------------------------------------

def test_compose_with_identity_triples(example):
    _, _, _, vd = example
    assert compose(vd.delta, identity_cochain(8)) == 3 * vd.delta


def test_compose_with_zero():
    rng = np.random.default_rng(0)
    P = random_cochain(rng, 4, 4, 1)
    Z = Cochain(4, 4, 0, {})
    assert compose(P, Z).is_zero()
    assert compose(Cochain(4, 4, 1, {}), random_cochain(rng, 4, 4, 0)).is_zero()


def test_compose_degree_zero_is_composition():
    rng = np.random.default_rng(1)
    A = random_cochain(rng, 4, 4, 0)
    B = random_cochain(rng, 4, 4, 0)
    expected = Cochain.from_matrix(linalg.matmul(A.to_matrix(), B.to_matrix()))
    assert compose(A, B) == expected


def test_compose_is_bilinear():
    rng = np.random.default_rng(2)
    P1, P2 = (random_cochain(rng, 4, 4, 1, density=0.3) for _ in range(2))
    Q = random_cochain(rng, 4, 4, 1, density=0.3)
    lhs = compose(2 * P1 - P2, Q).materialize()
    rhs = 2 * compose(P1, Q).materialize() - compose(P2, Q).materialize()
    assert lhs == rhs
    lhs = compose(Q, 3 * P1 + P2).materialize()
    rhs = 3 * compose(Q, P1).materialize() + compose(Q, P2).materialize()
    assert lhs == rhs


def test_self_bracket_of_valid_semidirect_structure(example):
    _, _, _, vd = example
    assert vd.self_bracket_vanishes()


def test_self_bracket_odd_degree_doubles():
    rng = np.random.default_rng(3)
    for _ in range(3):
        P = random_cochain(rng, 4, 4, 1, density=0.3)
        assert nr_bracket(P, P) == 2 * compose(P, P).materialize()


def test_any_skew_bracket_in_dim3_squares_to_zero():
    rng = np.random.default_rng(4)
    for _ in range(5):
        a = random_skew_bracket(rng, 3, density=1.0)
        assert check_fundamental_identity(a) == []
        assert nr_bracket(a.structure, a.structure).is_zero()


def test_self_bracket_detects_invalid_structure():
    a = TriLieAlgebra(4, {(1, 2, 3): {0: 1}, (0, 1, 2): {1: 1}})
    assert check_fundamental_identity(a)
    assert not nr_bracket(a.structure, a.structure).is_zero()


# -- embedding and projection ---------------------------------------------------------------

def test_embed_of_degree_zero_map(example):
    g, act, H, vd = example
    e = vd.embed(H)
    for i in range(8):
        expected = {k + 4: c for k, c in H.image(i).items()} if i < 4 else {}
        assert e(unit(i)) == expected


def test_embed_zero():
    assert embed_relative(Cochain(4, 3, 1, {}), 4, 3).is_zero()


def test_project_embed_round_trip():
    rng = np.random.default_rng(5)
    for s in range(50):
        f = random_cochain(rng, 4, 3, s % 3, density=0.4)
        e = embed_relative(f, 4, 3)
        assert project(e, 4, 3) == f
        assert is_relative(e, 4)


def test_project_is_idempotent():
    rng = np.random.default_rng(6)
    P = random_cochain(rng, 7, 7, 1, density=0.3)
    once = project(P, 4, 3)
    assert project(embed_relative(once, 4, 3), 4, 3) == once


def test_delta_projects_to_zero(example):
    assert example[3].delta_in_kernel()


# -- derived brackets ---------------------------------------------------------------------

def l1_display(g, act, H, x, y, z):
    """rho(x,y)Hz + rho(y,z)Hx + rho(z,x)Hy - H[x,y,z]."""
    return vsum(
        act.rep.apply_basis(x, y, H.image(z)),
        act.rep.apply_basis(y, z, H.image(x)),
        act.rep.apply_basis(z, x, H.image(y)),
        {k: -c for k, c in H(g.bracket_basis(x, y, z)).items()},
    )


def test_l1_of_zero(example):
    g, _, _, vd = example
    assert derived_bracket_l1(vd, LinearMap.zero(g, g)).is_zero()


def test_l1_example_value(example):
    g, act, H, vd = example
    assert derived_bracket_l1(vd, H).at((1, 2, 3)) == {0: 1}


def test_l1_matches_display_on_random_maps(example):
    g, act, _, vd = example
    rng = np.random.default_rng(7)
    for _ in range(20):
        H = LinearMap(g, g, random_cochain(rng, 4, 4, 0).to_matrix())
        l1 = derived_bracket_l1(vd, H)
        for t in itertools.combinations(range(4), 3):
            assert l1.at(t) == l1_display(g, act, H, *t)


def test_l3_of_degree_zero_maps_is_six_brackets(example):
    g, act, _, vd = example
    rng = np.random.default_rng(8)
    for _ in range(3):
        H = LinearMap(g, g, random_cochain(rng, 4, 4, 0).to_matrix())
        l3 = derived_bracket_l3(vd, H, H, H)
        for t in itertools.combinations(range(4), 3):
            expected = g.structure(*(H.image(i) for i in t))
            assert l3.at(t) == {k: 6 * c for k, c in expected.items()}


def test_l3_with_zero_argument(example):
    g, _, H, vd = example
    assert derived_bracket_l3(vd, H, LinearMap.zero(g, g), H).is_zero()


def test_twice_twisted_structure_display(example):
    g, act, H, vd = example
    tw = TwistedBrackets(vd, H)
    h = act.target

    def part(v):
        return {k: c for k, c in v.items() if k < 4}, {k - 4: c for k, c in v.items() if k >= 4}

    for a, b, c in itertools.product(range(8), repeat=3):
        (x, u), (y, v), (z, w) = part(unit(a)), part(unit(b)), part(unit(c))
        Hx, Hy, Hz = H(x), H(y), H(z)
        expected = vsum(h.structure(Hx, Hy, w), h.structure(Hx, v, Hz), h.structure(u, Hy, Hz))
        expected = {k + 4: 2 * val for k, val in expected.items()}
        assert tw.d_hh(unit(a), unit(b), unit(c)) == expected


def test_lk_vanishing(example):
    _, _, _, vd = example
    rng = np.random.default_rng(9)
    assert derived_bracket_lk_vanishes(vd, 2, 30, rng) == (True, [])
    assert derived_bracket_lk_vanishes(vd, 4, 4, rng) == (True, [])


def test_l2_of_zero_inputs(example):
    g, _, _, vd = example
    z = LinearMap.zero(g, g)
    assert vd.bracket(z, z).is_zero()


def test_lk_rejects_nonvanishing_orders(example):
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        derived_bracket_lk_vanishes(example[3], 3, 1, rng)


# -- Maurer-Cartan elements ---------------------------------------------------------------

def test_mc_residual_examples(example):
    g, act, H, vd = example
    assert mc_residual(vd, H).is_zero()
    assert mc_residual(vd, LinearMap.zero(g, g)).is_zero()
    assert mc_residual(vd, LinearMap.identity(g)).table() == {(1, 2, 3): {0: 3}}


def test_mc_residual_is_minus_crossed_residual(example):
    g, act, _, vd = example
    rng = np.random.default_rng(10)
    for s in range(20):
        m = random_family_member(rng) if s % 2 else random_family_violator(rng)
        H = LinearMap(g, g, m)
        assert mc_residual(vd, H) == -1 * crossed_residual(H, act)


def test_mc_residual_requires_degree_zero(example):
    with pytest.raises(DegreeMismatch):
        mc_residual(example[3], Cochain(4, 4, 1, {}))


def test_mc_on_random_instances():
    rng = np.random.default_rng(11)
    for kind in ("dim3", "simple4", "conjugated"):
        inst = random_instance(rng, kind)
        assert mc_residual(VData.from_action(inst.act), inst.H).is_zero()


# -- twisting ---------------------------------------------------------------------------------

def test_twist_by_zero(example):
    g, act, _, vd = example
    tw = TwistedBrackets(vd, LinearMap.zero(g, g))
    rng = np.random.default_rng(12)
    for npairs in (0, 1):
        P = random_cochain(rng, 4, 4, npairs, density=0.4)
        Q = random_cochain(rng, 4, 4, 0)
        assert tw.l1(P) == vd.bracket(P)
        assert tw.l2(P, Q).is_zero()


def test_twist_requires_maurer_cartan(example):
    g, _, _, vd = example
    with pytest.raises(NotMaurerCartan):
        TwistedBrackets(vd, LinearMap.identity(g))


def test_twisted_l2_graded_symmetry(example):
    g, act, H, vd = example
    tw = TwistedBrackets(vd, H)
    rng = np.random.default_rng(13)
    for p, q in ((0, 0), (0, 1), (1, 0), (1, 1)):
        P = random_cochain(rng, 4, 4, p, density=0.4)
        Q = random_cochain(rng, 4, 4, q, density=0.4)
        sign = -1 if (p * q) % 2 else 1
        assert tw.l2(P, Q) == sign * tw.l2(Q, P)


def test_twisted_mc_examples(example):
    g, act, H, vd = example
    tw = TwistedBrackets(vd, H)
    assert twisted_mc_residual(vd, H, LinearMap.zero(g, g), tw).is_zero()
    assert twisted_mc_residual(vd, H, -H, tw).is_zero()


def test_twisted_mc_iff_sum_is_crossed(example):
    g, act, H, vd = example
    tw = TwistedBrackets(vd, H)
    rng = np.random.default_rng(14)
    seen = set()
    for s in range(20):
        m = random_family_member(rng) if s % 2 else random_family_violator(rng)
        H2 = LinearMap(g, g, m) - H
        ok = twisted_mc_residual(vd, H, H2, tw).is_zero()
        assert ok == is_crossed(H + H2, act)
        seen.add(ok)
    assert seen == {True, False}
