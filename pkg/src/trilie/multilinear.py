"""Multilinear maps of the shape Hom((∧²A)^{⊗m} ∧ A, B).

A map with ``npairs = m`` takes ``m`` skew pairs followed by one vector, i.e.
``2m + 1`` vector arguments.  For ``m >= 1`` the last pair and the final vector
form a totally skew triple; the leading ``m - 1`` pairs are each skew but
unrelated to one another.  ``m = 0`` is an ordinary linear map A -> B.

Values are sparse vectors: dicts ``{index: Fraction}`` with no zero entries.
Maps are stored (or lazily computed) on canonical basis tuples

    (i1, j1, ..., i_{m-1}, j_{m-1}, a, b, c)   with i < j and a < b < c

and evaluated elsewhere by applying permutation signs.  Coordinates of a map
are ordered tuple-major (lexicographic tuples), output index fastest.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .linalg import ZERO, to_fraction, vector

Vec = dict  # sparse vector {index: Fraction}


# -- sparse vectors ---------------------------------------------------------

def as_vec(v) -> Vec:
    """Accept a dict, a dense sequence, or a numpy array."""
    if isinstance(v, dict):
        return {int(k): to_fraction(x) for k, x in v.items() if x != 0}
    return {i: to_fraction(x) for i, x in enumerate(v) if x != 0}


def unit(i: int) -> Vec:
    return {i: Fraction(1)}


def axpy(acc: Vec, c, v: Mapping) -> Vec:
    """acc += c * v, in place."""
    if c == 0:
        return acc
    for k, x in v.items():
        y = acc.get(k, ZERO) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def scale(c, v: Mapping) -> Vec:
    if c == 0:
        return {}
    return {k: c * x for k, x in v.items()}


def vsum(*vs: Mapping) -> Vec:
    acc: Vec = {}
    for v in vs:
        axpy(acc, 1, v)
    return acc


def to_dense(v: Mapping, dim: int) -> np.ndarray:
    out = vector([0] * dim)
    for k, x in v.items():
        out[k] = x
    return out


def shift(v: Mapping, offset: int) -> Vec:
    return {k + offset: x for k, x in v.items()}


def restrict(v: Mapping, lo: int, hi: int) -> Vec:
    """Components with lo <= index < hi, reindexed from zero."""
    return {k - lo: x for k, x in v.items() if lo <= k < hi}


def mat_vec(m: np.ndarray, v: Mapping) -> Vec:
    acc: Vec = {}
    for k, x in v.items():
        col = m[:, k]
        for i, y in enumerate(col):
            if y:
                acc[i] = acc.get(i, ZERO) + x * y
    return {i: y for i, y in acc.items() if y}


# -- permutations and shuffles ----------------------------------------------

def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 if an entry repeats)."""
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def shuffles(a: int, b: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...]:
    """All (a, b)-shuffles of range(a + b), lexicographic in the first block.

    Each entry is ``(first, second, sign)`` where ``first`` and ``second`` are
    the increasing images of the two blocks and ``sign`` is the inversion-count
    sign of the permutation ``first + second``.
    """
    out = []
    for first in itertools.combinations(range(a + b), a):
        rest = tuple(i for i in range(a + b) if i not in first)
        out.append((first, rest, perm_sign(first + rest)))
    return tuple(out)


# -- canonical basis ---------------------------------------------------------

def arity(npairs: int) -> int:
    return 2 * npairs + 1


def canonical(idx: Sequence[int], npairs: int) -> tuple[int, tuple[int, ...] | None]:
    """Sign and canonical representative of a basis argument tuple.

    Returns ``(0, None)`` when the symmetry forces the value to vanish.
    """
    if npairs == 0:
        return 1, (idx[0],)
    sign = 1
    out: list[int] = []
    for s in range(npairs - 1):
        i, j = idx[2 * s], idx[2 * s + 1]
        if i == j:
            return 0, None
        if i > j:
            i, j = j, i
            sign = -sign
        out += (i, j)
    a, b, c = idx[-3:]
    if a == b or b == c or a == c:
        return 0, None
    t = perm_sign((a, b, c))
    out += sorted((a, b, c))
    return sign * t, tuple(out)


@lru_cache(maxsize=None)
def basis_tuples(dim: int, npairs: int) -> tuple[tuple[int, ...], ...]:
    if npairs == 0:
        return tuple((a,) for a in range(dim))
    pairs = list(itertools.combinations(range(dim), 2))
    triples = list(itertools.combinations(range(dim), 3))
    out = []
    for lead in itertools.product(pairs, repeat=npairs - 1):
        for t in triples:
            out.append(sum(lead, ()) + t)
    return tuple(out)


@lru_cache(maxsize=None)
def basis_index(dim: int, npairs: int) -> dict[tuple[int, ...], int]:
    return {t: i for i, t in enumerate(basis_tuples(dim, npairs))}


def space_dim(dim: int, out_dim: int, npairs: int) -> int:
    return len(basis_tuples(dim, npairs)) * out_dim


def pairs_of(idx: Sequence) -> list[tuple]:
    """Split a flat argument list into its pairs; the final vector is idx[-1]."""
    return [(idx[2 * s], idx[2 * s + 1]) for s in range((len(idx) - 1) // 2)]


def flatten(pairs: Iterable[tuple], last) -> list:
    out: list = []
    for p in pairs:
        out += p
    out.append(last)
    return out


# -- multilinear maps --------------------------------------------------------

class Multilinear:
    """Base class: a multilinear map known through its canonical basis values."""

    def __init__(self, dim: int, out_dim: int, npairs: int):
        self.dim = dim
        self.out_dim = out_dim
        self.npairs = npairs
        self._cache: dict[tuple[int, ...], Vec] = {}

    @property
    def degree(self) -> int:
        return self.npairs

    def _compute(self, idx: tuple[int, ...]) -> Vec:
        raise NotImplementedError

    def at(self, idx: tuple[int, ...]) -> Vec:
        """Value on a canonical basis tuple (do not mutate the result)."""
        v = self._cache.get(idx)
        if v is None:
            v = self._compute(idx)
            self._cache[idx] = v
        return v

    def value(self, idx: Sequence[int]) -> Vec:
        sign, c = canonical(idx, self.npairs)
        if sign == 0:
            return {}
        v = self.at(c)
        return v if sign == 1 else scale(-1, v)

    def __call__(self, *args: Mapping) -> Vec:
        if len(args) != arity(self.npairs):
            raise ValueError(f"expected {arity(self.npairs)} arguments, got {len(args)}")
        items = [list(a.items()) for a in args]
        if any(not it for it in items):
            return {}
        acc: Vec = {}
        for combo in itertools.product(*items):
            idx = tuple(k for k, _ in combo)
            sign, c = canonical(idx, self.npairs)
            if sign == 0:
                continue
            v = self.at(c)
            if not v:
                continue
            coef = sign
            for _, x in combo:
                coef *= x
            axpy(acc, coef, v)
        return acc

    def table(self) -> dict[tuple[int, ...], Vec]:
        out = {}
        for t in basis_tuples(self.dim, self.npairs):
            v = self.at(t)
            if v:
                out[t] = dict(v)
        return out

    def materialize(self) -> "Cochain":
        return Cochain(self.dim, self.out_dim, self.npairs, self.table())

    def coords(self) -> np.ndarray:
        """Coordinate vector in the canonical basis (output index fastest)."""
        tuples = basis_tuples(self.dim, self.npairs)
        out = vector([0] * (len(tuples) * self.out_dim))
        for n, t in enumerate(tuples):
            for k, x in self.at(t).items():
                out[n * self.out_dim + k] = x
        return out

    def is_zero(self) -> bool:
        return all(not self.at(t) for t in basis_tuples(self.dim, self.npairs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multilinear):
            return NotImplemented
        if (self.dim, self.out_dim, self.npairs) != (other.dim, other.out_dim, other.npairs):
            return False
        return all(self.at(t) == other.at(t) for t in basis_tuples(self.dim, self.npairs))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim}, out_dim={self.out_dim}, npairs={self.npairs})"


class Cochain(Multilinear):
    """A multilinear map given by an explicit table of canonical values."""

    def __init__(self, dim: int, out_dim: int, npairs: int, data: Mapping | None = None):
        super().__init__(dim, out_dim, npairs)
        self.data: dict[tuple[int, ...], Vec] = {}
        for idx, v in (data or {}).items():
            sign, c = canonical(tuple(idx), npairs)
            if sign == 0:
                raise ValueError(f"argument tuple {idx} vanishes by skew symmetry")
            vv = as_vec(v)
            if any(k >= out_dim for k in vv):
                raise ValueError(f"value {v} outside the {out_dim}-dimensional target")
            if vv:
                self.data[c] = axpy(self.data.get(c, {}), sign, vv)
        self.data = {k: v for k, v in self.data.items() if v}

    def _compute(self, idx):
        return self.data.get(idx, {})

    @classmethod
    def from_coords(cls, dim: int, out_dim: int, npairs: int, coords: Sequence) -> "Cochain":
        tuples = basis_tuples(dim, npairs)
        if len(coords) != len(tuples) * out_dim:
            raise ValueError("coordinate vector has the wrong length")
        data = {}
        for n, t in enumerate(tuples):
            v = {k: to_fraction(coords[n * out_dim + k]) for k in range(out_dim) if coords[n * out_dim + k] != 0}
            if v:
                data[t] = v
        return cls(dim, out_dim, npairs, data)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "Cochain":
        """A linear map (npairs = 0) from its matrix (columns are images)."""
        rows, cols = m.shape
        return cls(cols, rows, 0, {(a,): as_vec(m[:, a]) for a in range(cols)})

    def to_matrix(self) -> np.ndarray:
        if self.npairs != 0:
            raise ValueError("only linear maps have a matrix")
        out = np.empty((self.out_dim, self.dim), dtype=object)
        for a in range(self.dim):
            out[:, a] = to_dense(self.at((a,)), self.out_dim)
        return out

    def __add__(self, other: Multilinear) -> "Cochain":
        return linear_combination([(1, self), (1, other)])

    def __sub__(self, other: Multilinear) -> "Cochain":
        return linear_combination([(1, self), (-1, other)])

    def __neg__(self) -> "Cochain":
        return linear_combination([(-1, self)])

    def __rmul__(self, c) -> "Cochain":
        return linear_combination([(to_fraction(c), self)])


class Lazy(Multilinear):
    """A multilinear map computed on demand from a function of basis tuples."""

    def __init__(self, dim: int, out_dim: int, npairs: int, fn: Callable[[tuple[int, ...]], Vec]):
        super().__init__(dim, out_dim, npairs)
        self.fn = fn

    def _compute(self, idx):
        return self.fn(idx)

    def raw(self, idx: Sequence[int]) -> Vec:
        """Evaluate the defining formula on any basis tuple, canonical or not."""
        return self.fn(tuple(idx))


def linear_combination(terms: Iterable[tuple[object, Multilinear]]) -> Cochain:
    terms = [(to_fraction(c), m) for c, m in terms]
    first = terms[0][1]
    shape = (first.dim, first.out_dim, first.npairs)
    for _, m in terms:
        if (m.dim, m.out_dim, m.npairs) != shape:
            raise ValueError("cannot combine maps of different shapes")
    data: dict = {}
    for t in basis_tuples(first.dim, first.npairs):
        acc: Vec = {}
        for c, m in terms:
            axpy(acc, c, m.at(t))
        if acc:
            data[t] = acc
    return Cochain(*shape, data)


def zero_cochain(dim: int, out_dim: int, npairs: int) -> Cochain:
    return Cochain(dim, out_dim, npairs, {})


def basis_cochains(dim: int, out_dim: int, npairs: int) -> Iterator[Cochain]:
    """The coordinate basis, in coordinate order."""
    for t in basis_tuples(dim, npairs):
        for k in range(out_dim):
            yield Cochain(dim, out_dim, npairs, {t: {k: Fraction(1)}})


def random_cochain(rng: np.random.Generator, dim: int, out_dim: int, npairs: int,
                   density: float = 1.0, bound: int = 3) -> Cochain:
    """Random rational coefficients in [-bound, bound] with denominators 1..2."""
    data = {}
    for t in basis_tuples(dim, npairs):
        v = {}
        for k in range(out_dim):
            if rng.random() < density:
                x = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, 3)))
                if x:
                    v[k] = x
        if v:
            data[t] = v
    return Cochain(dim, out_dim, npairs, data)


def symmetry_defects(m: Lazy, tuples: Iterable[tuple[int, ...]] | None = None) -> list[tuple[int, ...]]:
    """Basis tuples where the raw formula disagrees with the assumed skew symmetry.

    For each canonical tuple, every reordering within each leading pair and
    every permutation of the tail triple is evaluated through ``m.raw`` and
    compared with ``sign * m.raw(canonical)``.  Tuples with a repeated entry in
    a skew group must evaluate to zero.
    """
    bad = []
    base = tuples if tuples is not None else basis_tuples(m.dim, m.npairs)
    for t in base:
        ref = m.raw(t)
        for alt in _reorderings(t, m.npairs):
            sign, _ = canonical(alt, m.npairs)
            got = m.raw(alt)
            if got != (ref if sign == 1 else scale(-1, ref)):
                bad.append(alt)
        for alt in _degenerate(t, m.npairs):
            if m.raw(alt):
                bad.append(alt)
    return bad


def _degenerate(t: tuple[int, ...], npairs: int) -> Iterator[tuple[int, ...]]:
    """Copies of ``t`` with one entry of a skew group overwritten by another."""
    if npairs == 0:
        return
    groups = [(2 * s, 2 * s + 1) for s in range(npairs - 1)] + [tuple(range(len(t) - 3, len(t)))]
    for g in groups:
        for src, dst in itertools.permutations(g, 2):
            alt = list(t)
            alt[dst] = t[src]
            yield tuple(alt)


def _reorderings(t: tuple[int, ...], npairs: int) -> Iterator[tuple[int, ...]]:
    if npairs == 0:
        return
    groups = [t[2 * s: 2 * s + 2] for s in range(npairs - 1)] + [t[-3:]]
    options = [list(itertools.permutations(g)) for g in groups]
    for combo in itertools.product(*options):
        alt = sum(combo, ())
        if alt != t:
            yield alt
