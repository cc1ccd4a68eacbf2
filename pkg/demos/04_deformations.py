"""Classifying infinitesimal deformations H + tK up to equivalence.

Run with ``python3 demos/04_deformations.py``.
"""

from __future__ import annotations

from trilie.algebra import Action, Bivector, LinearMap, example_algebra, example_crossed_map
from trilie.cochains import delta_map
from trilie.deformations import DeformationCandidate, SecondCohomology, check_equivalence, check_infinitesimal
from trilie.multilinear import Cochain

g = example_algebra()
act = Action.adjoint(g)
H = example_crossed_map(g)
space = SecondCohomology(H, act)
print(f"dim Z^2 = {space.cocycles.dim}, dim B^2 = {space.coboundaries.dim}, dim H^2 = {space.dim}")


def as_map(coords):
    return LinearMap(g, g, Cochain.from_coords(4, 4, 0, coords).to_matrix())


# A cocycle that is not a coboundary, and the same cocycle moved by delta(X).
K = as_map(space.complement.basis[0])
X = Bivector(4, {(1, 2): 1, (0, 3): 2})
K2 = K + LinearMap(g, g, delta_map(H, act, X).to_matrix())
print("K is infinitesimal:", check_infinitesimal(DeformationCandidate(H, K), act).valid)
print("class of K: ", [str(c) for c in space.class_of(K)[1]])
print("class of K2:", [str(c) for c in space.class_of(K2)[1]])

v = check_equivalence(K2, K, X, H, act)
print("K2 ~ K via X:", v.valid, "| first-order action condition:", v.details["condition_two_t1"])
W = space.witness(K2, K)
print("witness found by solving:", {f"e{i + 1}^e{j + 1}": str(c) for (i, j), c in W.terms()})
print("delta(e1^e4) is zero, so that part of X is invisible:", delta_map(H, act, Bivector(4, {(0, 3): 1})).is_zero())
print("K ~ 0 ?", space.witness(K, LinearMap.zero(g, g)))
