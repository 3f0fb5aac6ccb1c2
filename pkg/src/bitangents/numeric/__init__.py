"""Exact and certified numerical kernel."""

from .intervals import CInterval, RInterval, precision_cap
from .polynomials import MultiPoly, UniPoly
from .resultants import resultant

__all__ = ["CInterval", "MultiPoly", "RInterval", "UniPoly", "precision_cap", "resultant"]
