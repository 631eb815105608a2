"""Exact symbolic engine for W-algebras of centralizers of nilpotents in gl_N."""

from .pyramid import GenIndex, Kind, Pyramid
from .scalar import K, Scalar, alpha, form
from .statespace import FullComplex, Mode, ReducedAlgebra, State, mode

__version__ = "0.1.0"

__all__ = [
    "GenIndex", "Kind", "Pyramid", "K", "Scalar", "alpha", "form",
    "FullComplex", "Mode", "ReducedAlgebra", "State", "mode",
]
