"""Frobenius-theoretic singularity invariants of hypersurface families."""

__version__ = "0.1.0"

from .field import FieldSpec
from .poly import MonomialOrder, Polynomial, RingSpec
from .groebner import Ideal

__all__ = ["FieldSpec", "RingSpec", "Polynomial", "MonomialOrder", "Ideal",
           "__version__"]
