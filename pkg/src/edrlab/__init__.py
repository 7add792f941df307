"""Finite commutative rings, 2x2 matrix lifting properties and elementary
divisor criteria, checked by exhaustive or seeded search."""

from .rings import UNKNOWN, Elem, FiniteRing, RingError, make_ring, tristate
from .matrices import Mat

__all__ = ["UNKNOWN", "Elem", "FiniteRing", "Mat", "RingError", "make_ring", "tristate"]
__version__ = "0.1.0"
