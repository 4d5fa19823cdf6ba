import itertools

import pytest
from hypothesis import given, settings, strategies as st

from goldbach_poly import oracle
from goldbach_poly.errors import BudgetExceeded, FieldError, NotApplicable
from goldbach_poly.fields import FieldSpec
from goldbach_poly.polynomial import Polynomial, parse_polynomial

from strategies import polynomials

F2, F3 = FieldSpec.prime(2), FieldSpec.prime(3)
XY = ("x", "y")


def P(text, field, vars=XY):
    return parse_polynomial(text, vars, field)


def test_enumeration_order_and_count():
    seq = [str(g) for g in oracle.enumerate_polynomials(F2, ("x",), 1)]
    assert seq == ["0", "1", "x", "x + 1"]
    assert oracle.count_polynomials(F3, 2, 2) == 3 ** 6
    assert sum(1 for _ in oracle.enumerate_polynomials(F3, XY, 2)) == 3 ** 6


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        list(oracle.enumerate_polynomials(F3, XY, 4, budget=1000))


def test_irreducible_polynomials_over_f2_in_one_variable():
    # the irreducibles of degree <= 3 over F2: x, x+1, x^2+x+1, x^3+x+1, x^3+x^2+1
    found = [str(g) for g in oracle.irreducibles_up_to(F2, ("x",), 3)]
    assert sorted(found) == sorted(["x", "x + 1", "x^2 + x + 1", "x^3 + x + 1", "x^3 + x^2 + 1"])


def test_not_applicable_inputs():
    with pytest.raises(NotApplicable):
        oracle.is_irreducible_bruteforce(Polynomial.zero(XY, F2))
    with pytest.raises(NotApplicable):
        oracle.is_irreducible_bruteforce(Polynomial.constant(1, XY, F2))
    with pytest.raises(FieldError):
        oracle.is_irreducible_bruteforce(parse_polynomial("x + 1", XY))


@settings(max_examples=150, deadline=None)
@given(polynomials(F3, 2, max_degree=2, max_terms=4), polynomials(F3, 2, max_degree=2, max_terms=4))
def test_products_are_reducible(g, h):
    if g.is_constant() or h.is_constant():
        return
    f = g * h
    assert not oracle.is_irreducible_bruteforce(f, method="enumerate")
    assert not oracle.is_irreducible_bruteforce(f, method="kronecker")


@settings(max_examples=150, deadline=None)
@given(polynomials(F2, 2, max_degree=4, max_terms=6))
def test_kronecker_agrees_with_enumeration(f):
    if f.is_constant():
        return
    assert (oracle.is_irreducible_bruteforce(f, method="kronecker")
            == oracle.is_irreducible_bruteforce(f, method="enumerate"))


def test_high_degree_summands():
    assert oracle.is_irreducible_bruteforce(P("x^2*y^27 + x^2*y^2 + 1", F2))
    assert oracle.is_irreducible_bruteforce(P("x^2*y^27 + 1", F3))
    assert not oracle.is_irreducible_bruteforce(P("x^2*y^27 + x^2*y^2", F2))


def test_extension_field_evidence():
    f = P("x^2 + y^2", F3)
    assert oracle.is_irreducible_bruteforce(f)
    # x^2 + y^2 = (x + i y)(x - i y) once -1 has a square root
    assert not oracle.is_irreducible_over_extension(f, 2)
    assert oracle.is_irreducible_over_extension(P("x*y + 1", F2), 2)


def test_sums_of_irreducibles_in_f2():
    target = P("x^2 + x", F2, ("x",))
    assert oracle.check_sum_of_irreducibles(target, 2, 2) is None
    witness = oracle.check_sum_of_irreducibles(target, 3, 2)
    assert witness is not None
    assert sum(witness, Polynomial.zero(("x",), F2)) == target


def test_sum_witness_is_permutation_symmetric():
    target = P("x^2 + y", F3)
    witness = oracle.check_sum_of_irreducibles(target, 2, 2)
    assert witness is not None
    for perm in itertools.permutations(witness):
        assert sum(perm, Polynomial.zero(XY, F3)) == target
    assert all(oracle.is_irreducible_bruteforce(g) for g in witness)


@pytest.mark.parametrize("p,i", [(1, 1), (2, 3), (4, 1)])
def test_quotient_identity(p, i):
    r = oracle.quotient_identity(p, i)
    assert r.remainder_identity and r.product_identity
