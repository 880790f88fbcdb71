"""Squares in sequences attached to generalised Pell equations.

Exact sequence arithmetic, the closed-form bounds, hypergeometric
approximants, and the exhaustive tuple search.
"""

from .kernels import BACKEND
from .numeric import factorize, is_perfect_square, isqrt, padic_valuation, squarefree_core
from .sequences import SequenceElement, SequenceParams, compute_K, element_at, element_prime_at, scan_squares, validate_params

__all__ = [
    "BACKEND",
    "SequenceElement",
    "SequenceParams",
    "compute_K",
    "element_at",
    "element_prime_at",
    "factorize",
    "is_perfect_square",
    "isqrt",
    "padic_valuation",
    "scan_squares",
    "squarefree_core",
    "validate_params",
]

__version__ = "0.1.0"
