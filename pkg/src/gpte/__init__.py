"""Exact solver workbench for equal-sums-of-like-powers systems.

Modules: core (exact types and verification), newton (power-sum /
elementary-function identity machinery), prunec (constant-C divisibility
pruning), bounds (extremal-ratio constants, lookup tables, thresholds),
search (pruned exhaustive enumeration), catalog (corpus handling, chains,
primality, parametric generators), cli (command-line front end).
"""

from .core import (
    ExponentSpec,
    GpteSolution,
    Side,
    extended_power_sum,
    make_solution,
    mirror_transform,
    normalize,
    verify_equal,
)
from .errors import GpteError

__version__ = "0.1.0"

__all__ = [
    "ExponentSpec",
    "GpteSolution",
    "Side",
    "extended_power_sum",
    "make_solution",
    "mirror_transform",
    "normalize",
    "verify_equal",
    "GpteError",
    "__version__",
]
