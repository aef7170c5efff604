"""Quasi-twisted code construction, distance certification, and search."""

from .fields import Field, FieldElement, field_make
from .polys import Poly, binomial_factor, factor, gcd

__version__ = "0.1.0"

__all__ = [
    "Field",
    "FieldElement",
    "field_make",
    "Poly",
    "factor",
    "gcd",
    "binomial_factor",
    "__version__",
]
