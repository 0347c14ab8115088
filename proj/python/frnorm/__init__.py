"""Frobenius-Rieffel norms, conditional expectations and equivalence
constants on direct sums of matrix algebras.

Elements are lists of square complex arrays, one per summand. Weights default
to the values proportional to the summand sizes.
"""

from ._frnorm import (
    ConvergenceError,
    FrnormError,
    Subalgebra,
    baire_distance,
    cf_expand,
    cond_expect,
    es_constant,
    es_level,
    fr_norm,
    fr_norm_conjugated,
    fr_norm_squared,
    op_norm,
    periodic_value,
    quotient_seminorm,
    search,
    structural_constants,
    table1,
)

__all__ = [
    "ConvergenceError",
    "FrnormError",
    "Subalgebra",
    "baire_distance",
    "cf_expand",
    "cond_expect",
    "es_constant",
    "es_level",
    "fr_norm",
    "fr_norm_conjugated",
    "fr_norm_squared",
    "op_norm",
    "periodic_value",
    "quotient_seminorm",
    "search",
    "structural_constants",
    "table1",
]
