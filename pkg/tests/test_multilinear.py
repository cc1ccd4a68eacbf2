from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trilie.multilinear import (
    Cochain,
    Lazy,
    axpy,
    basis_tuples,
    canonical,
    linear_combination,
    perm_sign,
    random_cochain,
    shuffles,
    space_dim,
    symmetry_defects,
    unit,
    vsum,
)


def test_perm_sign():
    assert perm_sign((0, 1, 2)) == 1
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((2, 0, 1)) == 1
    assert perm_sign((0, 0, 1)) == 0


@pytest.mark.parametrize("a,b", [(0, 0), (1, 0), (0, 2), (1, 1), (2, 1), (2, 2), (3, 2)])
def test_shuffle_count_and_signs(a, b):
    sh = shuffles(a, b)
    assert len(sh) == comb(a + b, a)
    for first, rest, sign in sh:
        assert list(first) == sorted(first) and list(rest) == sorted(rest)
        assert sign == perm_sign(first + rest)


def test_canonical_forms():
    assert canonical((3,), 0) == (1, (3,))
    assert canonical((2, 1, 0), 1) == (-1, (0, 1, 2))
    assert canonical((1, 0, 2, 3, 1), 2) == (-1, (0, 1, 1, 2, 3))
    assert canonical((0, 1, 3, 1, 2), 2) == (1, (0, 1, 1, 2, 3))
    assert canonical((1, 1, 0, 2, 3), 2) == (0, None)
    assert canonical((0, 1, 2, 2, 3), 2) == (0, None)


def test_space_dims():
    assert space_dim(4, 4, 0) == 16
    assert space_dim(4, 4, 1) == 16
    assert space_dim(4, 4, 2) == 96
    assert len(basis_tuples(5, 1)) == 10


def test_sparse_vectors():
    acc = {0: Fraction(1)}
    axpy(acc, 2, {0: Fraction(-1, 2), 1: 3})
    assert acc == {1: 6}
    assert vsum({0: 1}, {0: -1}) == {}


def test_evaluation_respects_skew_symmetry():
    rng = np.random.default_rng(0)
    f = random_cochain(rng, 4, 2, 2)
    for idx in itertools.product(range(4), repeat=5):
        sign, canon = canonical(idx, 2)
        got = f(*(unit(i) for i in idx))
        if sign == 0:
            assert got == {}
        else:
            assert got == {k: sign * v for k, v in f.at(canon).items()}


def test_evaluation_is_multilinear():
    rng = np.random.default_rng(1)
    f = random_cochain(rng, 4, 3, 1)
    x = {0: Fraction(1), 2: Fraction(-2)}
    y = {1: Fraction(3)}
    z = {3: Fraction(1, 2)}
    lhs = f(x, y, z)
    rhs = vsum(
        {k: -2 * 3 * Fraction(1, 2) * v for k, v in f(unit(2), unit(1), unit(3)).items()},
        {k: 3 * Fraction(1, 2) * v for k, v in f(unit(0), unit(1), unit(3)).items()},
    )
    assert lhs == rhs


def test_coords_round_trip():
    rng = np.random.default_rng(2)
    for npairs in (0, 1, 2):
        f = random_cochain(rng, 4, 3, npairs, density=0.5)
        assert Cochain.from_coords(4, 3, npairs, f.coords()) == f


def test_matrix_round_trip():
    rng = np.random.default_rng(3)
    f = random_cochain(rng, 3, 5, 0)
    assert Cochain.from_matrix(f.to_matrix()) == f
    assert f.to_matrix().shape == (5, 3)


def test_arithmetic():
    rng = np.random.default_rng(4)
    f = random_cochain(rng, 4, 2, 1)
    g = random_cochain(rng, 4, 2, 1)
    assert (f + g) - g == f
    assert (f - f).is_zero()
    assert linear_combination([(2, f), (-1, g)]) == 2 * f - g
    assert -f == -1 * f


def test_symmetry_defects_detects_bad_formula():
    good = Lazy(3, 1, 1, lambda idx: {0: Fraction(perm_sign(idx))} if perm_sign(idx) else {})
    assert symmetry_defects(good) == []
    bad = Lazy(3, 1, 1, lambda idx: {0: Fraction(1)})
    assert symmetry_defects(bad)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 2))
def test_from_coords_inverts_coords(seed, npairs):
    rng = np.random.default_rng(seed)
    f = random_cochain(rng, 4, 2, npairs, density=0.4)
    g = Cochain.from_coords(4, 2, npairs, f.coords())
    assert list(g.coords()) == list(f.coords())
