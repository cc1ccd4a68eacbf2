"""Cohomology of the crossed homomorphism H: e2 -> e2, e3 -> e3, e4 -> -e4.

Run with ``python3 demos/02_cohomology.py``.
"""

from __future__ import annotations

from trilie.algebra import Action, example_algebra, example_crossed_map
from trilie.cochains import cohomology_dims, cohomology_dims_bareiss, crossed_complex

g = example_algebra()
act = Action.adjoint(g)
H = example_crossed_map(g)

cx = crossed_complex(H, act, max_degree=3)
print("differential shapes:", {n: m.shape for n, m in cx.differentials.items()})
print("consecutive products vanish:", cx.square_zero)

print(f"{'n':>2} {'C^n':>5} {'Z^n':>5} {'B^n':>5} {'H^n':>5}")
for n in (1, 2, 3):
    d = cohomology_dims(cx, n)
    assert d == cohomology_dims_bareiss(cx, n)
    print(f"{n:>2} {d.cochains:>5} {d.cocycles:>5} {d.coboundaries:>5} {d.cohomology:>5}")
