"""Exact arithmetic building blocks: rationals, polynomials, parsing, linear systems."""

from fractions import Fraction

from .linalg import InconsistentSystemError, LinearSystem, Solution, nullspace, solve_exact
from .parser import ParseError, parse_polynomial
from .polynomial import (
    NotDivisibleError,
    Polynomial,
    PolynomialError,
    UnknownVariableError,
    exact_divide,
)

Rational = Fraction


def is_integer(x) -> bool:
    return Fraction(x).denominator == 1


__all__ = [
    "Fraction", "Rational", "is_integer",
    "Polynomial", "PolynomialError", "UnknownVariableError", "NotDivisibleError", "exact_divide",
    "ParseError", "parse_polynomial",
    "LinearSystem", "Solution", "InconsistentSystemError", "solve_exact", "nullspace",
]
