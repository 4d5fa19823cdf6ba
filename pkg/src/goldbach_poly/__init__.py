"""Certified decompositions of multivariate polynomials into absolutely irreducible summands."""

from .engine import DecompositionMode, certify, decompose, localize_decompose, split_by_witness
from .fields import QQ, FieldSpec
from .polynomial import Polynomial, parse_polynomial

__version__ = "0.1.0"

__all__ = [
    "DecompositionMode", "FieldSpec", "Polynomial", "QQ", "certify", "decompose",
    "localize_decompose", "parse_polynomial", "split_by_witness",
]
