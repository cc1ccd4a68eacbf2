"""Exact computations for 3-Lie algebras, crossed homomorphisms and their deformations."""

from __future__ import annotations

from .algebra import (
    Action,
    Bivector,
    LinearMap,
    Representation,
    TriLieAlgebra,
    check_action,
    check_crossed,
    check_crossed_family_constraints,
    check_fundamental_identity,
    check_representation,
    check_rota_baxter,
    example_algebra,
    example_crossed_map,
    is_crossed,
    semidirect_product,
    semidirect_structure,
)
from .cochains import (
    coboundary,
    coboundary_matrix,
    cohomology_dims,
    cohomology_dims_bareiss,
    cohomology_table,
    crossed_complex,
    delta_map,
    induced_representation,
)
from .deformations import (
    DeformationCandidate,
    SecondCohomology,
    check_equivalence,
    check_infinitesimal,
)
from .errors import TriLieError
from .fileformat import parse, serialize
from .linf import VData, TwistedBrackets, mc_residual, nr_bracket, twisted_mc_residual
from .multilinear import Cochain

__version__ = "0.1.0"
