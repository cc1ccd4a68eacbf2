"""Exact linear algebra over the rationals.

Matrices are numpy arrays of dtype ``object`` holding :class:`fractions.Fraction`
entries.  Everything here is exact; no floating point is ever involved.

Subspaces are kept in reduced row-echelon form so that two subspaces are equal
exactly when their :class:`Subspace` values compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import NotASubspace, NotInvertible

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (float, np.floating)):
        raise TypeError("floating point scalars are not accepted; use Fraction or 'p/q'")
    if isinstance(x, np.integer):
        return Fraction(int(x))
    return Fraction(x)


def matrix(rows: Iterable[Sequence], cols: int | None = None) -> np.ndarray:
    """Build an exact 2-D object array from nested sequences."""
    data = [[to_fraction(v) for v in row] for row in rows]
    if not data:
        return np.empty((0, cols or 0), dtype=object)
    out = np.empty((len(data), len(data[0])), dtype=object)
    for i, row in enumerate(data):
        if len(row) != out.shape[1]:
            raise ValueError("ragged matrix rows")
        out[i, :] = row
    return out


def zeros(rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def vector(values: Iterable) -> np.ndarray:
    vals = [to_fraction(v) for v in values]
    out = np.empty(len(vals), dtype=object)
    out[:] = vals
    return out


def is_zero(m: np.ndarray) -> bool:
    return all(x == 0 for x in np.asarray(m).flat)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product; handles empty dimensions that numpy's object dot dislikes."""
    if a.shape[-1] == 0:
        shape = a.shape[:-1] + b.shape[1:]
        out = np.empty(shape, dtype=object)
        out.fill(ZERO)
        return out
    out = a.dot(b)
    if isinstance(out, np.ndarray):
        return out
    return np.array(out, dtype=object)


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Gauss-Jordan elimination over Q, scanning columns left to right.

    Returns:
        (R, pivots): the reduced row-echelon form (zero rows dropped) and the
        list of pivot columns.
    """
    rows = [[to_fraction(x) for x in row] for row in np.asarray(m)]
    n_rows = len(rows)
    n_cols = m.shape[1] if m.ndim == 2 else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        prow = [x * inv for x in rows[r]]
        rows[r] = prow
        nz = [j for j in range(c, n_cols) if prow[j] != 0]
        for i in range(n_rows):
            if i == r:
                continue
            f = rows[i][c]
            if f == 0:
                continue
            row = rows[i]
            for j in nz:
                row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    out = zeros(r, n_cols)
    for i in range(r):
        out[i, :] = rows[i]
    return out, pivots


def rank(m: np.ndarray) -> int:
    return len(rref(m)[1])


def bareiss_rank(m: np.ndarray) -> int:
    """Rank by fraction-free Bareiss elimination, pivoting on rows from the bottom.

    This is an independent route to :func:`rank`: denominators are cleared per
    row and elimination runs over the integers in a different pivot order.
    """
    rows = []
    for row in np.asarray(m):
        den = math.lcm(1, *(to_fraction(x).denominator for x in row))
        rows.append([int(to_fraction(x) * den) for x in row])
    rows.reverse()
    n_rows = len(rows)
    n_cols = m.shape[1] if m.ndim == 2 else 0
    prev = 1
    r = 0
    for c in range(n_cols - 1, -1, -1):
        piv = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, n_rows):
            f = rows[i][c]
            new = []
            for j in range(n_cols):
                q, rem = divmod(p * rows[i][j] - f * rows[r][j], prev)
                assert rem == 0, "Bareiss division must be exact"
                new.append(q)
            rows[i] = new
        prev = p
        r += 1
        if r == n_rows:
            break
    return r


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim, stored as its canonical RREF basis."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(v) if x != 0) for v in self.basis)

    def as_matrix(self) -> np.ndarray:
        """Basis vectors as the rows of a matrix."""
        return matrix(self.basis, cols=self.ambient_dim)

    def reduce(self, v: Sequence) -> np.ndarray:
        """Normal form of ``v`` modulo this subspace (zero at every pivot)."""
        w = vector(v)
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c != 0:
                for j, x in enumerate(row):
                    if x != 0:
                        w[j] -= c * x
        return w

    def contains(self, v: Sequence) -> bool:
        return is_zero(self.reduce(v))

    def coordinates(self, v: Sequence) -> tuple[Fraction, ...] | None:
        """Coordinates of ``v`` in the canonical basis, or None if ``v`` is outside."""
        if not self.contains(v):
            return None
        w = vector(v)
        return tuple(w[p] for p in self.pivots)


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    vecs = [list(v) for v in vectors]
    if not vecs:
        return Subspace(ambient_dim, ())
    r, _ = rref(matrix(vecs))
    return Subspace(ambient_dim, tuple(tuple(row) for row in r))


def kernel(m: np.ndarray) -> Subspace:
    """Null space of ``m`` (as a map Q^cols -> Q^rows), in canonical form."""
    n_cols = m.shape[1]
    r, pivots = rref(m)
    free = [j for j in range(n_cols) if j not in set(pivots)]
    vecs = []
    for f in free:
        v = [ZERO] * n_cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        vecs.append(v)
    return span(vecs, n_cols)


def column_space(m: np.ndarray) -> Subspace:
    return span(np.asarray(m).T, m.shape[0])


def quotient_dim(big: Subspace, small: Subspace) -> int:
    """dim(big / small); raises NotASubspace unless small is inside big."""
    if big.ambient_dim != small.ambient_dim:
        raise NotASubspace("ambient dimensions differ")
    for v in small.basis:
        if not big.contains(v):
            raise NotASubspace(f"vector {v} of the smaller space is not in the larger one")
    return big.dim - small.dim


def solve(m: np.ndarray, b: Sequence) -> np.ndarray | None:
    """One exact solution of ``m x = b`` (free variables set to zero), or None."""
    n_rows, n_cols = m.shape
    aug = zeros(n_rows, n_cols + 1)
    aug[:, :n_cols] = m
    aug[:, n_cols] = vector(b)
    r, pivots = rref(aug)
    if pivots and pivots[-1] == n_cols:
        return None
    x = vector([0] * n_cols)
    for i, p in enumerate(pivots):
        x[p] = r[i, n_cols]
    return x


def det(m: np.ndarray) -> Fraction:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    rows = [[to_fraction(x) for x in row] for row in m]
    d = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        d *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return d


def inverse(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n) or det(m) == 0:
        raise NotInvertible("matrix is singular")
    aug = zeros(n, 2 * n)
    aug[:, :n] = m
    aug[:, n:] = identity(n)
    r, _ = rref(aug)
    return r[:, n:].copy()
