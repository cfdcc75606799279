"""Integer and polynomial primitives the rest of the package builds on."""

from .integers import (
    DEFAULT_BUDGET,
    FactorBudget,
    Factorization,
    factorize,
    integer_root,
    is_prime,
    is_wieferich,
    pth_power_free,
    xgcd,
)
from .polys import (
    IntPoly,
    ModPoly,
    factor_mod_q,
    is_irreducible_mod_q,
    poly_gcd_mod_q,
    squarefree_decomposition,
)

__all__ = [
    "DEFAULT_BUDGET",
    "FactorBudget",
    "Factorization",
    "IntPoly",
    "ModPoly",
    "factor_mod_q",
    "factorize",
    "integer_root",
    "is_irreducible_mod_q",
    "is_prime",
    "is_wieferich",
    "poly_gcd_mod_q",
    "pth_power_free",
    "squarefree_decomposition",
    "xgcd",
]
