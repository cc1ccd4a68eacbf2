"""A four-dimensional 3-Lie algebra, its adjoint action and a crossed homomorphism.

Run with ``python3 demos/01_example_algebra.py``.
"""

from __future__ import annotations

import numpy as np

from trilie import linalg
from trilie.algebra import (
    Action,
    LinearMap,
    center,
    check_action,
    check_crossed,
    check_crossed_family_constraints,
    check_fundamental_identity,
    example_algebra,
    example_crossed_map,
    semidirect_product,
)
from trilie.fileformat import format_combo
from trilie.instances import random_family_member


def show(m) -> str:
    return "\n".join("  " + " ".join(f"{str(x):>5}" for x in row) for row in m)


g = example_algebra()
for (i, j, k), v in g.structure_constants().items():
    print(f"[e{i + 1}, e{j + 1}, e{k + 1}] = {format_combo(v)}")
print("fundamental identity violations:", check_fundamental_identity(g))
print("center basis:", [[str(x) for x in v] for v in center(g).basis])

ad = Action.adjoint(g)
print("adjoint action violations:", check_action(ad))

s = semidirect_product(g, ad)
print(f"semidirect product: dim {s.dim}, FI violations {check_fundamental_identity(s)}")

H = example_crossed_map(g)
print("H =")
print(show(H.matrix))
print("crossed residual of H:", check_crossed(H, ad))


# The identity is not crossed: the residual sits on (e2, e3, e4).
for t, v in check_crossed(LinearMap.identity(g), ad):
    print("crossed residual of Id at", tuple(i + 1 for i in t), "=", format_combo(v))

# Every crossed homomorphism of this algebra satisfies four closed-form constraints.
rng = np.random.default_rng(0)
K = LinearMap(g, g, random_family_member(rng))
print("random family member:")
print(show(K.matrix))
print("constraints violated:", check_crossed_family_constraints(K), "| crossed:", not check_crossed(K, ad))
print("det =", linalg.det(K.matrix))
