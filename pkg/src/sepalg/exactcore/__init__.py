"""Exact scalars, dense exact linear algebra and polynomial factorization."""

from .fields import (QQ, ExtensionField, Field, GF, PrimeField, RationalField, Scalar,
                     default_modulus, field_from_json, is_prime)
from .linalg import ExactMatrix, solve_linear
from .poly import Polynomial, factor_polynomial, is_irreducible, minimal_polynomial

__all__ = [
    "QQ", "ExtensionField", "Field", "GF", "PrimeField", "RationalField", "Scalar",
    "default_modulus", "field_from_json", "is_prime", "ExactMatrix", "solve_linear",
    "Polynomial", "factor_polynomial", "is_irreducible", "minimal_polynomial",
]
