"""Exact invariant-level arithmetic for topological vector bundles.

Rank-2 classes on CP^3 are modeled by (c1, c2, alpha) and rank-3
classes on CP^5 by (c1, c2, c3); the package implements the additive
structures on classes with fixed lower Chern data, the Horrocks-style
sum, Riemann-Roch feasibility, and the quadric parametrization of split
elements, with brute-force oracles backing every closed form.
"""

from . import acceptance, cohomology, diophantine, rank2, rank3
from .errors import (
    BundleArithError,
    ConsistencyError,
    DomainError,
    FormulaNotApplicableError,
    HorrocksUndefinedError,
)

__version__ = "0.1.0"

__all__ = [
    "acceptance",
    "cohomology",
    "diophantine",
    "rank2",
    "rank3",
    "BundleArithError",
    "ConsistencyError",
    "DomainError",
    "FormulaNotApplicableError",
    "HorrocksUndefinedError",
    "__version__",
]
