"""Arbitrary-precision hyperbolic series, lattice sums and theta kernels."""
from .mpcore import (
    ConvergenceError,
    DomainError,
    HypseriesError,
    PoleError,
    PrecCtx,
    PrecisionError,
)

__version__ = "0.1.0"

__all__ = [
    "PrecCtx",
    "HypseriesError",
    "DomainError",
    "PoleError",
    "ConvergenceError",
    "PrecisionError",
]
