from __future__ import annotations

import itertools

import numpy as np
import pytest

from trilie import linalg
from trilie.algebra import Action, Bivector, LinearMap, example_algebra, example_crossed_map
from trilie.cochains import crossed_complex, delta_map
from trilie.deformations import (
    DeformationCandidate,
    SecondCohomology,
    check_equivalence,
    check_infinitesimal,
    cohomology_class,
    find_witness,
    trivial_deformation,
)
from trilie.errors import InvalidBase, NotACocycle
from trilie.instances import random_instance, rational
from trilie.linf import TwistedBrackets, VData
from trilie.multilinear import Cochain, random_cochain


@pytest.fixture(scope="module")
def example():
    g = example_algebra()
    act = Action.adjoint(g)
    H = example_crossed_map(g)
    return g, act, H, SecondCohomology(H, act)


def as_map(g, h, coords):
    return LinearMap(g, h, Cochain.from_coords(g.dim, h.dim, 0, coords).to_matrix())


def random_cocycle(rng, space):
    v = linalg.vector([0] * space.cocycles.ambient_dim)
    for b in space.cocycles.basis:
        v = v + linalg.vector(b) * rational(rng)
    return as_map(space.H.source, space.H.target, v)


def random_bivector(rng, dim):
    return Bivector(dim, {p: rational(rng) for p in itertools.combinations(range(dim), 2)})


def delta_as_map(H, act, X):
    return LinearMap(H.source, H.target, delta_map(H, act, X).to_matrix())


def test_zero_direction_is_infinitesimal(example):
    g, act, H, _ = example
    v = check_infinitesimal(DeformationCandidate(H, LinearMap.zero(g, g)), act)
    assert v.valid and v.details["agree"]


def test_coboundary_directions_are_infinitesimal(example):
    g, act, H, _ = example
    rng = np.random.default_rng(0)
    for _ in range(5):
        K = delta_as_map(H, act, random_bivector(rng, 4))
        assert check_infinitesimal(DeformationCandidate(H, K), act).valid


def test_kernel_membership_matches_check(example):
    g, act, H, space = example
    d2 = crossed_complex(H, act, 2).differential(2)
    rng = np.random.default_rng(1)
    seen = set()
    for s in range(20):
        K = random_cocycle(rng, space) if s % 2 else as_map(g, g, random_cochain(rng, 4, 4, 0).coords())
        in_kernel = linalg.is_zero(linalg.matmul(d2, K.as_cochain().coords()))
        v = check_infinitesimal(DeformationCandidate(H, K), act)
        assert v.valid == in_kernel
        assert v.details["agree"]
        seen.add(in_kernel)
    assert seen == {True, False}


def test_invalid_base_rejected(example):
    g, act, _, _ = example
    with pytest.raises(InvalidBase):
        check_infinitesimal(DeformationCandidate(LinearMap.identity(g), LinearMap.zero(g, g)), act)
    with pytest.raises(InvalidBase):
        SecondCohomology(LinearMap.identity(g), act)


def test_second_cohomology_dimension(example):
    # 12 cocycles, 3 coboundaries (see the cohomology table test)
    assert example[3].dim == 9


def test_coboundary_has_zero_class(example):
    g, act, H, space = example
    rng = np.random.default_rng(2)
    for _ in range(5):
        _, coords = space.class_of(delta_as_map(H, act, random_bivector(rng, 4)))
        assert not any(coords)


def test_class_invariant_under_coboundaries(example):
    g, act, H, space = example
    rng = np.random.default_rng(3)
    for _ in range(10):
        K = random_cocycle(rng, space)
        K2 = K + delta_as_map(H, act, random_bivector(rng, 4))
        assert space.class_of(K) == space.class_of(K2)


def test_class_coordinates_reproducible(example):
    g, act, H, space = example
    rng = np.random.default_rng(4)
    K = random_cocycle(rng, space)
    fresh = SecondCohomology(H, act)
    assert fresh.class_of(K) == space.class_of(K)
    assert cohomology_class(DeformationCandidate(H, K), act)[1] == space.class_of(K)[1]


def test_class_coordinates_separate_classes(example):
    g, act, H, space = example
    for i, b in enumerate(space.complement.basis):
        _, coords = space.class_of(as_map(g, g, b))
        assert coords == tuple(1 if j == i else 0 for j in range(space.dim))


def test_class_of_non_cocycle(example):
    g, _, _, space = example
    with pytest.raises(NotACocycle):
        space.class_of(LinearMap.identity(g))


def test_equivalence_trivial_case(example):
    g, act, H, space = example
    K = random_cocycle(np.random.default_rng(5), space)
    v = check_equivalence(K, K, Bivector(4), H, act)
    assert v.valid and v.details["agree"]


def test_equivalence_by_construction(example):
    g, act, H, space = example
    rng = np.random.default_rng(6)
    for _ in range(10):
        K2 = random_cocycle(rng, space)
        X = random_bivector(rng, 4)
        K1 = K2 + delta_as_map(H, act, X)
        v = check_equivalence(K1, K2, X, H, act)
        assert v.valid and v.details["delta_route"]
        assert space.class_of(K1)[1] == space.class_of(K2)[1]
        assert check_equivalence(K2, K1, -X, H, act).valid


def test_wrong_witness_rejected(example):
    g, act, H, space = example
    rng = np.random.default_rng(7)
    K2 = random_cocycle(rng, space)
    X = Bivector(4, {(1, 2): 1})
    K1 = K2 + delta_as_map(H, act, X)
    v = check_equivalence(K1, K2, Bivector(4, {(1, 3): 1}), H, act)
    assert not v.valid
    assert v.violations and v.details["agree"]


def test_equivalence_requires_cocycles(example):
    g, act, H, _ = example
    with pytest.raises(NotACocycle):
        check_equivalence(LinearMap.identity(g), LinearMap.zero(g, g), Bivector(4), H, act)


def test_witness_solver(example):
    g, act, H, space = example
    rng = np.random.default_rng(8)
    K2 = random_cocycle(rng, space)
    X = random_bivector(rng, 4)
    K1 = K2 + delta_as_map(H, act, X)
    W = find_witness(K1, K2, H, act, space)
    assert W is not None
    assert check_equivalence(K1, K2, W, H, act).valid
    # a class basis vector is not a coboundary
    other = K2 + as_map(g, g, space.complement.basis[0])
    assert find_witness(other, K2, H, act, space) is None


def test_trivial_deformations(example):
    g, act, H, space = example
    zero = LinearMap.zero(g, g)
    assert trivial_deformation(DeformationCandidate(H, zero), Bivector(4), act).valid
    X = Bivector(4, {(0, 1): 2, (1, 2): -1})
    assert trivial_deformation(DeformationCandidate(H, delta_as_map(H, act, X)), X, act).valid
    rng = np.random.default_rng(9)
    nontrivial = as_map(g, g, space.complement.basis[0])
    for _ in range(10):
        assert not trivial_deformation(DeformationCandidate(H, nontrivial), random_bivector(rng, 4), act).valid


def test_condition_two_reported_separately(example):
    g, act, H, space = example
    X = Bivector(4, {(1, 2): 1})
    v = check_equivalence(delta_as_map(H, act, X), LinearMap.zero(g, g), X, H, act)
    assert v.valid
    assert isinstance(v.details["condition_two_t1"], bool)
    assert set(v.details["derivations_t1"]) == {"g", "h"}


def test_infinitesimal_matches_twisted_l1():
    rng = np.random.default_rng(10)
    for kind in ("example", "dim3", "simple4", "conjugated"):
        inst = random_instance(rng, kind)
        space = SecondCohomology(inst.H, inst.act)
        tw = TwistedBrackets(VData.from_action(inst.act), inst.H)
        g, h = inst.g, inst.act.target
        for K in (random_cocycle(rng, space), as_map(g, h, random_cochain(rng, g.dim, h.dim, 0).coords())):
            v = check_infinitesimal(DeformationCandidate(inst.H, K), inst.act)
            assert v.valid == tw.l1(K).is_zero()
