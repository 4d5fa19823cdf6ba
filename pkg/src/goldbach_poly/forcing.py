"""Decompositions in linear forcing algebras K[x_1..x_n]/(f_1 x_1 + ... + f_n x_n + f).

With constant ``f_i`` and a pivot ``f_i != 0`` the algebra is a polynomial
ring in the other ``n - 1`` variables, via
``x_i -> -sum_{j != i} (f_j / f_i) x_j - f / f_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .engine import Decomposition, DecompositionMode, decompose
from .errors import ArityMismatch, PivotCoefficientZero, UnsupportedArity
from .fields import QQ, FieldSpec
from .polynomial import Polynomial, substitute_linear


@dataclass(frozen=True)
class ForcingData:
    field: FieldSpec
    vars: tuple
    coefficients: tuple
    constant: object
    pivot: int

    @classmethod
    def create(cls, coefficients: Sequence, constant=0, vars: Sequence[str] | None = None,
               field: FieldSpec = QQ, pivot: int | str | None = None) -> ForcingData:
        """Build the data; the pivot defaults to the first nonzero coefficient."""
        coeffs = tuple(field.coerce(c) for c in coefficients)
        n = len(coeffs)
        if vars is None:
            vars = tuple(f"x{k + 1}" for k in range(n))
        vars = tuple(vars)
        if len(vars) != n:
            raise ArityMismatch(f"{n} coefficients for {len(vars)} variables")
        if isinstance(pivot, str):
            if pivot not in vars:
                raise ArityMismatch(f"pivot {pivot!r} is not among {vars}")
            pivot = vars.index(pivot)
        if pivot is None:
            pivot = next((k for k, c in enumerate(coeffs) if c), None)
            if pivot is None:
                raise PivotCoefficientZero("every coefficient is zero")
        if not 0 <= pivot < n:
            raise ArityMismatch(f"pivot index {pivot} out of range")
        if not coeffs[pivot]:
            raise PivotCoefficientZero(f"coefficient of {vars[pivot]} is zero")
        return cls(field, vars, coeffs, field.coerce(constant), pivot)

    @property
    def n(self) -> int:
        return len(self.vars)

    @property
    def remaining_vars(self) -> tuple:
        return self.vars[:self.pivot] + self.vars[self.pivot + 1:]

    def relation(self) -> Polynomial:
        F, n = self.field, self.n
        terms = {tuple(int(j == k) for j in range(n)): c for k, c in enumerate(self.coefficients)}
        terms[(0,) * n] = self.constant
        return Polynomial(F, self.vars, terms)

    def replacement(self) -> Polynomial:
        """The affine form substituted for the pivot variable."""
        F, n, i = self.field, self.n, self.pivot
        fi = self.coefficients[i]
        terms = {
            tuple(int(j == k) for j in range(n)): F.neg(F.div(c, fi))
            for k, c in enumerate(self.coefficients) if k != i
        }
        terms[(0,) * n] = F.neg(F.div(self.constant, fi))
        return Polynomial(F, self.vars, terms)


def normal_form(data: ForcingData, element: Polynomial) -> Polynomial:
    """Image of ``element`` in the polynomial ring on the non-pivot variables."""
    if element.field != data.field or element.vars != data.vars:
        element = element.with_vars(data.vars)
    return substitute_linear(element, data.pivot, data.replacement())


def embed(data: ForcingData, g: Polynomial) -> Polynomial:
    """Lift a polynomial on the remaining variables back to all ``n`` variables."""
    return g.with_vars(data.vars)


@dataclass(frozen=True)
class ForcingDecomposition:
    data: ForcingData
    element: Polynomial
    normal_form: Polynomial
    decomposition: Decomposition
    congruent: bool


def decompose_in_forcing(data: ForcingData, element: Polynomial,
                         mode=DecompositionMode.PYRAMID) -> ForcingDecomposition:
    """Certified decomposition of ``element`` in the forcing algebra.

    Summands live in ``n - 1`` variables; ``congruent`` records that their
    sum, lifted back, differs from ``element`` by a multiple of the relation.
    """
    if data.n < 3:
        raise UnsupportedArity(
            f"forcing algebras in {data.n} variables are outside the construction (need n >= 3)")
    nf = normal_form(data, element)
    d = decompose(nf, mode)
    lifted = Polynomial.zero(data.vars, data.field)
    for s, _ in d.summands:
        lifted = lifted + embed(data, s)
    congruent = normal_form(data, lifted - element.with_vars(data.vars)).is_zero()
    return ForcingDecomposition(data, element, nf, d, congruent)
