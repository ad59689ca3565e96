"""Exact computation with quaternion algebras over Q."""

from .algebra import MultiplicationTable
from .arith import INF, REAL, Place
from .orders import Order, discriminant, is_maximal, max_order, standard_order
from .quadform import LocalRing, QuadraticForm, normalize
from .quaternion import QuaternionAlgebra, recognize
from .symbols import hilbert, hilbert_even, jacobi, ramified_set

__version__ = "0.1.0"

__all__ = [
    "INF", "REAL", "LocalRing", "MultiplicationTable", "Order", "Place", "QuadraticForm",
    "QuaternionAlgebra", "discriminant", "hilbert", "hilbert_even", "is_maximal", "jacobi",
    "max_order", "normalize", "ramified_set", "recognize", "standard_order",
]
