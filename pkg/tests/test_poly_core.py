from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from goldbach_poly.errors import (
    ArityMismatch, FieldError, FieldMismatch, NotAffine, PolyDivisionByZero,
    PolynomialSyntaxError, ReplacementUsesPivot, UnknownVariable,
)
from goldbach_poly.fields import FieldSpec, format_rational, parse_rational
from goldbach_poly.polynomial import (
    Polynomial, constant_coefficient, divmod_poly, format_polynomial, infer_vars,
    parse_polynomial, substitute_linear, support, term_count, try_exact_divide,
)

from strategies import F5, QQ, from_sympy, polynomials, to_sympy, triples

XY = ("x", "y")


def P(text, vars=XY, field=QQ):
    return parse_polynomial(text, vars, field)


# ---- fields

def test_field_parsing_and_arithmetic():
    assert FieldSpec.parse("QQ") == QQ
    for spelling in ("F5", "GF(5)", "Fp5"):
        assert FieldSpec.parse(spelling) == F5
    assert F5.inv(2) == 3
    assert F5.coerce(-1) == 4
    assert QQ.div(1, 3) == Fraction(1, 3)
    assert list(FieldSpec.prime(3).elements()) == [0, 1, 2]


def test_field_rejects_composites_and_fractions_mod_p():
    with pytest.raises(FieldError):
        FieldSpec.prime(6)
    with pytest.raises(FieldError):
        FieldSpec.parse("F1")
    # 1/2 in F5 is 3
    assert F5.coerce(Fraction(1, 2)) == 3


def test_rational_format_roundtrip():
    for x in [Fraction(0), Fraction(-7, 3), Fraction(27, 8), Fraction(5)]:
        assert parse_rational(format_rational(x)) == x
    assert parse_rational("1e-6") == Fraction(1, 10**6)


# ---- construction and accessors

def test_accessors():
    f = P("x*y^4 + x*y + 1")
    assert term_count(f) == 3
    assert support(f) == {(1, 4), (1, 1), (0, 0)}
    assert constant_coefficient(f) == 1
    assert f.total_degree() == 5
    assert Polynomial.zero(XY).total_degree() == -1
    assert not f.divisible_by_variable()
    assert P("x*y + x").divisible_by_variable()


def test_zero_coefficients_are_dropped():
    f = Polynomial(QQ, XY, {(1, 0): 0, (0, 0): 2})
    assert f.terms == {(0, 0): 2}
    assert (P("x") - P("x")).is_zero()


def test_mismatched_rings_are_rejected():
    with pytest.raises(FieldMismatch):
        P("x") + P("x", field=F5)
    with pytest.raises(ArityMismatch):
        P("x") + P("x", ("x",))


# ---- parsing and formatting

@pytest.mark.parametrize("text, expected", [
    ("x*y+x+y+1", "x*y + x + y + 1"),
    ("2*x^2+3*y^2-7*z^2+5", "2*x^2 + 3*y^2 - 7*z^2 + 5"),
    ("x^3+3*x^2*y-4*y^3+6*z^3", "x^3 + 3*x^2*y - 4*y^3 + 6*z^3"),
    ("-(x+1)*(x-1)", "-x^2 + 1"),
    ("x**2 - x/2", "x^2 - 1/2*x"),
])
def test_session_inputs_parse(text, expected):
    f = parse_polynomial(text)
    assert str(f) == expected


def test_infer_vars_keeps_first_appearance():
    assert infer_vars("y*x + z") == ("y", "x", "z")


def test_prime_field_prints_residues():
    assert str(P("-x", field=F5)) == "4*x"


@pytest.mark.parametrize("bad", ["x*y+", "x^-1", "(x", "x**", "3 4", "x @ y", "1/0"])
def test_syntax_errors_carry_position(bad):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_polynomial(bad, XY)
    assert info.value.position >= 0
    assert "^" in str(info.value)


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_polynomial("x*q", XY)


@settings(max_examples=300, deadline=None)
@given(polynomials())
def test_parse_format_roundtrip(f):
    assert parse_polynomial(format_polynomial(f), f.vars, f.field) == f


# ---- ring axioms (checked against sympy as an independent reference)

@settings(max_examples=1000, deadline=None)
@given(triples())
def test_ring_axioms(t):
    f, g, h = t
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@settings(max_examples=200, deadline=None)
@given(triples(max_degree=4))
def test_arithmetic_matches_sympy(t):
    f, g, _ = t
    assert f * g == from_sympy(to_sympy(f) * to_sympy(g), f)
    assert f - g == from_sympy(to_sympy(f) - to_sympy(g), f)


@settings(max_examples=300, deadline=None)
@given(triples(max_degree=4))
def test_exact_division_recovers_factor(t):
    f, g, _ = t
    if g.is_zero():
        return
    assert try_exact_divide(f * g, g) == f


def test_exact_division_detects_non_divisibility():
    assert try_exact_divide(P("x^2 + 1"), P("x + 1")) is None
    q, r = divmod_poly(P("x^2 + 1"), P("x + 1"))
    assert q * P("x + 1") + r == P("x^2 + 1")
    with pytest.raises(PolyDivisionByZero):
        divmod_poly(P("x"), Polynomial.zero(XY))


def test_power():
    assert P("x + 1") ** 3 == P("x^3 + 3*x^2 + 3*x + 1")
    assert P("x + y") ** 0 == Polynomial.constant(1, XY)


# ---- substitution

def test_substitute_linear_example():
    V = ("x1", "x2", "x3")
    f = parse_polynomial("x1 + x2", V)
    r = parse_polynomial("-1/2*x3 - 3/2", V)
    image = substitute_linear(f, "x1", r)
    assert image.vars == ("x2", "x3")
    assert str(image) == "x2 - 1/2*x3 - 3/2"


def test_substitute_linear_rejects_bad_replacements():
    V = ("x1", "x2", "x3")
    f = parse_polynomial("x1", V)
    with pytest.raises(ReplacementUsesPivot):
        substitute_linear(f, 0, parse_polynomial("x1 + x2", V))
    with pytest.raises(NotAffine):
        substitute_linear(f, 0, parse_polynomial("x2*x3", V))


@settings(max_examples=200, deadline=None)
@given(triples(max_degree=4), st.data())
def test_substitute_linear_is_a_homomorphism(t, data):
    f, g, _ = t
    if f.nvars < 2:
        return
    n = f.nvars
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    terms = {tuple(int(j == k) for j in range(n)): c for k, c in enumerate(coeffs) if k != 0}
    terms[(0,) * n] = coeffs[0]
    r = Polynomial(f.field, f.vars, terms)
    phi = lambda h: substitute_linear(h, 0, r)
    assert phi(f + g) == phi(f) + phi(g)
    assert phi(f * g) == phi(f) * phi(g)
