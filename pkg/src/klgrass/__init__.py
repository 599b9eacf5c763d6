"""Factorized Kazhdan-Lusztig elements for Grassmannians, with exact verification."""
from .combinatorics import GrassmannShape, YoungDiagram
from .laurent import LaurentPoly, RationalFunction, quantum_integer

__version__ = "0.1.0"

__all__ = ["GrassmannShape", "YoungDiagram", "LaurentPoly", "RationalFunction", "quantum_integer"]
