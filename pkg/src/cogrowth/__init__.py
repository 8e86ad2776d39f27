"""Random-walk sampling of trivial words in finitely presented groups.

The package bundles four pieces that are useful together but independently
testable: a presentation parser with the symmetrized/cyclically-closed
relator form the walk needs, the Metropolis walk itself, the recursive
coefficient estimator with error propagation, and exact reference
machinery (series conversions and brute-force enumeration) used to
validate everything at small scale.
"""

__version__ = "0.1.0"

from .presentation import Presentation, parse_presentation, builtin_presentation
from .words import free_reduce, conjugate, left_insert
from .walker import WalkParams, WalkRecord, run_walk, run_grid, diagnose_relator_balance
from .estimator import (
    CogrowthEstimate,
    GammaEstimate,
    errr_estimate,
    estimate_from_anchor,
    gamma_series,
    wn_with_error,
)

__all__ = [
    "Presentation",
    "parse_presentation",
    "builtin_presentation",
    "free_reduce",
    "conjugate",
    "left_insert",
    "WalkParams",
    "WalkRecord",
    "run_walk",
    "run_grid",
    "diagnose_relator_balance",
    "CogrowthEstimate",
    "GammaEstimate",
    "errr_estimate",
    "estimate_from_anchor",
    "gamma_series",
    "wn_with_error",
    "__version__",
]
