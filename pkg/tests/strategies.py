"""Shared hypothesis strategies and sympy reference conversions."""

from fractions import Fraction

import sympy
from hypothesis import strategies as st

from goldbach_poly.fields import FieldSpec
from goldbach_poly.polynomial import Polynomial

QQ = FieldSpec.rationals()
F5 = FieldSpec.prime(5)
VARS = ("x", "y", "z", "w")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def exponents(n, max_degree=6):
    return st.lists(st.integers(0, max_degree), min_size=n, max_size=n).map(tuple).filter(
        lambda e: sum(e) <= max_degree)


@st.composite
def polynomials(draw, field=None, nvars=None, max_degree=6, max_terms=8):
    field = field or draw(st.sampled_from([QQ, F5]))
    n = nvars or draw(st.integers(1, 4))
    coeff = rationals if field.modulus is None else st.integers(1, field.modulus - 1)
    terms = draw(st.dictionaries(exponents(n, max_degree), coeff, max_size=max_terms))
    return Polynomial(field, VARS[:n], terms)


@st.composite
def triples(draw, max_degree=6):
    field = draw(st.sampled_from([QQ, F5]))
    n = draw(st.integers(1, 4))
    return tuple(draw(polynomials(field, n, max_degree, 5)) for _ in range(3))


def to_sympy(f: Polynomial):
    gens = sympy.symbols(f.vars)
    kw = {} if f.field.modulus is None else {"modulus": f.field.modulus}
    expr = sum((sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c))
               * sympy.prod([g ** k for g, k in zip(gens, e)]) for e, c in f.terms.items())
    return sympy.Poly(expr, *gens, **kw)


def from_sympy(P, like: Polynomial):
    terms = {}
    for e, c in P.terms():
        if like.field.modulus is None:
            terms[e] = Fraction(int(c.p), int(c.q))
        else:
            terms[e] = int(c) % like.field.modulus
    return Polynomial(like.field, like.vars, terms)
