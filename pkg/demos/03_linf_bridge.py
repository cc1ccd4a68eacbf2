"""Crossed homomorphisms as Maurer-Cartan elements of the derived L-infinity algebra.

Run with ``python3 demos/03_linf_bridge.py``.
"""

from __future__ import annotations

import numpy as np

from trilie.algebra import Action, LinearMap, check_crossed, example_algebra, example_crossed_map
from trilie.cochains import coboundary, induced_representation
from trilie.fileformat import format_combo
from trilie.instances import random_family_member, random_family_violator
from trilie.linf import TwistedBrackets, VData, mc_residual, nr_bracket, twisted_mc_residual
from trilie.multilinear import random_cochain

g = example_algebra()
act = Action.adjoint(g)
vd = VData.from_action(act)
print("[Delta, Delta] = 0:", nr_bracket(vd.delta, vd.delta).is_zero())

H = example_crossed_map(g)
print("MC residual of H is zero:", mc_residual(vd, H).is_zero())
for t, v in mc_residual(vd, LinearMap.identity(g)).table().items():
    print("MC residual of Id at", tuple(i + 1 for i in t), "=", format_combo(v))
for t, v in check_crossed(LinearMap.identity(g), act):
    print("crossed residual of Id at", tuple(i + 1 for i in t), "=", format_combo(v))

# Perturbing H by H2 keeps it crossed exactly when H2 solves the twisted equation.
tw = TwistedBrackets(vd, H)
rng = np.random.default_rng(1)
for make in (random_family_member, random_family_violator):
    H2 = LinearMap(g, g, make(rng)) - H
    twisted = twisted_mc_residual(vd, H, H2, tw).is_zero()
    print(f"{make.__name__:24s} twisted MC: {twisted}  H + H2 crossed: {not check_crossed(H + H2, act)}")

# The twisted differential is the coboundary operator up to sign.
rho_h = induced_representation(H, act)
for npairs in (0, 1, 2):
    f = random_cochain(rng, 4, 4, npairs, density=0.5)
    sign = -1 if npairs % 2 else 1
    same = coboundary(f, rho_h).materialize() == sign * tw.l1(f)
    print(f"degree {npairs + 1}: d f == {sign:+d} * l1^H f -> {same}")
