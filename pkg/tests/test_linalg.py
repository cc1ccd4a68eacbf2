from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from trilie import linalg
from trilie.errors import NotASubspace, NotInvertible


def small_fractions():
    return st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def matrices(draw, max_rows=5, max_cols=6):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    # bias towards zeros so that rank deficiency is common
    entry = st.one_of(st.just(Fraction(0)), small_fractions())
    data = draw(st.lists(st.lists(entry, min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return linalg.matrix(data)


def test_rank_examples():
    assert linalg.rank(linalg.identity(2)) == 2
    assert linalg.rank(linalg.zeros(3, 5)) == 0
    assert linalg.rank(linalg.matrix([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert linalg.kernel(linalg.zeros(2, 3)).dim == 3
    assert linalg.kernel(linalg.identity(3)).dim == 0
    k = linalg.kernel(linalg.matrix([[1, 1, 0]]))
    assert k.dim == 2
    assert k.contains([1, -1, 0])
    assert k.contains([0, 0, 1])


def test_column_space_examples():
    assert linalg.column_space(linalg.identity(3)).dim == 3
    assert linalg.column_space(linalg.zeros(3, 2)).dim == 0
    c = linalg.column_space(linalg.matrix([[1, 2], [2, 4]]))
    assert c.dim == 1
    assert c == linalg.span([[1, 2]], 2)


def test_quotient_dim_examples():
    big = linalg.kernel(linalg.matrix([[1, 1, 0]]))
    assert linalg.quotient_dim(big, big) == 0
    assert linalg.quotient_dim(linalg.kernel(linalg.zeros(1, 3)), linalg.Subspace(3, ())) == 3
    assert linalg.quotient_dim(big, linalg.span([[1, -1, 0]], 3)) == 1


def test_quotient_dim_rejects_non_subspace():
    big = linalg.span([[1, 0, 0]], 3)
    with pytest.raises(NotASubspace):
        linalg.quotient_dim(big, linalg.span([[0, 1, 0]], 3))


def test_floats_rejected():
    with pytest.raises(TypeError):
        linalg.to_fraction(0.5)
    assert linalg.to_fraction("3/6") == Fraction(1, 2)


def test_solve_and_inverse():
    m = linalg.matrix([[2, 1], [1, 1]])
    x = linalg.solve(m, [3, 2])
    assert list(x) == [1, 1]
    assert linalg.solve(linalg.matrix([[1, 1], [1, 1]]), [1, 2]) is None
    inv = linalg.inverse(m)
    assert linalg.is_zero(linalg.matmul(m, inv) - linalg.identity(2))
    assert linalg.det(m) == 1
    with pytest.raises(NotInvertible):
        linalg.inverse(linalg.matrix([[1, 2], [2, 4]]))


def test_subspace_is_canonical():
    a = linalg.span([[1, 2, 3], [0, 1, 1]], 3)
    b = linalg.span([[1, 3, 4], [2, 4, 6], [1, 2, 3]], 3)
    assert a == b


def test_coordinates_and_reduce():
    s = linalg.span([[1, 0, 1], [0, 1, 1]], 3)
    assert s.coordinates([2, 3, 5]) == (2, 3)
    assert s.coordinates([0, 0, 1]) is None
    w = s.reduce([0, 0, 1])
    assert all(w[p] == 0 for p in s.pivots)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert linalg.rank(m) + linalg.kernel(m).dim == m.shape[1]


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_vectors_are_annihilated(m):
    for v in linalg.kernel(m).basis:
        assert linalg.is_zero(linalg.matmul(m, linalg.vector(v)))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy_and_bareiss(m):
    expected = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m]).rank()
    assert linalg.rank(m) == expected
    assert linalg.bareiss_rank(m) == expected


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_canonical_forms_reproducible(m):
    assert linalg.kernel(m) == linalg.kernel(m.copy())
    assert linalg.column_space(m) == linalg.column_space(m.copy())
    assert linalg.column_space(m).dim == linalg.rank(m)
