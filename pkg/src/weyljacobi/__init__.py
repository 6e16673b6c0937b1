"""Exact q-expansions of Weyl-invariant weak Jacobi forms.

The layers, bottom up: :mod:`lattice` and :mod:`rootsystems` (Gram data,
roots, Weyl groups), :mod:`series` (truncated q-series with Laurent
coefficients in zeta), :mod:`blocks` (eta, theta, Eisenstein series,
theta blocks, generators), :mod:`jacobian` and :mod:`structure`
(free-generation criterion, decomposition, E8 obstruction pipeline).
"""

from .blocks import a1_generators, b_tower, builtin_generators, eisenstein, phi_R
from .errors import JacobiError
from .jacobian import cofactor_jacobians, is_algebraically_independent, jacobian, syzygy
from .lattice import Lattice
from .rootsystems import RootSystemData, catalog
from .series import JacobiForm, QZSeries, check_elliptic, check_group_invariance, dz, exact_divide, mul
from .structure import (
    DecompResult,
    GeneratorSystem,
    check_free_criterion,
    decompose,
    e8_pipeline,
    evaluate_decomposition,
    index0_to_poly,
    verify_wirthmuller,
)

__version__ = "0.1.0"

__all__ = [
    "DecompResult",
    "GeneratorSystem",
    "JacobiError",
    "JacobiForm",
    "Lattice",
    "QZSeries",
    "RootSystemData",
    "a1_generators",
    "b_tower",
    "builtin_generators",
    "catalog",
    "check_elliptic",
    "check_free_criterion",
    "check_group_invariance",
    "cofactor_jacobians",
    "decompose",
    "dz",
    "e8_pipeline",
    "eisenstein",
    "evaluate_decomposition",
    "exact_divide",
    "index0_to_poly",
    "is_algebraically_independent",
    "jacobian",
    "mul",
    "phi_R",
    "syzygy",
    "verify_wirthmuller",
]
