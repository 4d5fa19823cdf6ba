"""Exhaustive referees over small prime fields.

These checks never use Newton polytopes, so they give an independent check
on the gcd certificates.  Every search has a candidate budget and raises
:class:`~goldbach_poly.errors.BudgetExceeded` instead of running away.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_mul, gf_pow

from .errors import BudgetExceeded, FieldError, NotApplicable
from .fields import QQ, FieldSpec
from .polynomial import Polynomial, grlex_key, try_exact_divide

DEFAULT_BUDGET = 10**7
# above this many candidates "auto" prefers Kronecker candidates
ENUMERATION_LIMIT = 20_000


def monomials_up_to(n: int, degree: int, bounds: Sequence[int] | None = None):
    """Exponents of total degree <= ``degree`` (and per-variable <= ``bounds``), descending grlex."""
    out = []
    for e in itertools.product(range(degree + 1), repeat=n):
        if sum(e) <= degree and (bounds is None or all(a <= b for a, b in zip(e, bounds))):
            out.append(e)
    out.sort(key=grlex_key, reverse=True)
    return out


def _require_prime_field(field: FieldSpec):
    if not field.is_prime_field:
        raise FieldError("exhaustive searches need a prime field")


def enumerate_polynomials(field: FieldSpec, vars: Sequence[str], max_total_degree: int,
                          budget: int = DEFAULT_BUDGET) -> Iterator[Polynomial]:
    """Every polynomial of total degree <= bound, each exactly once.

    The constant coefficient varies fastest, so over F2 in one variable the
    order starts 0, 1, x, x + 1.
    """
    _require_prime_field(field)
    vars = tuple(vars)
    monos = monomials_up_to(len(vars), max_total_degree)
    count = field.modulus ** len(monos)
    if count > budget:
        raise BudgetExceeded(f"{count} polynomials exceed the budget {budget}")
    for coeffs in itertools.product(field.elements(), repeat=len(monos)):
        yield Polynomial._raw(field, vars, {e: c for e, c in zip(monos, coeffs) if c})


def count_polynomials(field: FieldSpec, nvars: int, max_total_degree: int) -> int:
    return field.modulus ** math.comb(nvars + max_total_degree, nvars)


# --------------------------------------------------------------------------
# irreducibility

def _degree_bounds(f: Polynomial):
    return [f.degree_in(j) for j in range(f.nvars)]


def _check_applicable(f: Polynomial):
    _require_prime_field(f.field)
    if f.is_zero():
        raise NotApplicable("zero is neither irreducible nor reducible")
    if f.is_constant():
        raise NotApplicable("nonzero constants are units")


def _monic_candidates(field_elements, monos):
    """Monic polynomials (leading coefficient 1) supported on ``monos`` (descending)."""
    for lead in range(len(monos)):
        if not any(monos[lead]):
            continue
        tail = monos[lead + 1:]
        for coeffs in itertools.product(field_elements, repeat=len(tail)):
            yield monos[lead], tail, coeffs


def _enumeration_size(q: int, monos) -> int:
    return sum(q ** (len(monos) - k - 1) for k, m in enumerate(monos) if any(m))


def is_irreducible_bruteforce(f: Polynomial, budget: int = DEFAULT_BUDGET, method: str = "auto") -> bool:
    """Decide irreducibility over the base prime field by exhaustive trial division.

    ``method="enumerate"`` tries every monic ``g`` of total degree at most
    ``deg(f) // 2`` that fits inside the per-variable degrees of ``f``.
    ``method="kronecker"`` takes candidate factors from the divisors of the
    univariate image ``f(t, t^N, t^(N^2), ...)`` instead, which reaches
    high-degree inputs; it is complete because every factor of ``f`` maps to
    a divisor of the image.  ``"auto"`` enumerates small searches and uses
    Kronecker candidates otherwise.  Either way a candidate counts only if
    ``try_exact_divide`` succeeds.
    """
    _check_applicable(f)
    F = f.field
    bounds = _degree_bounds(f)
    monos = monomials_up_to(f.nvars, f.total_degree() // 2, bounds)
    size = _enumeration_size(F.modulus, monos)
    if method not in ("auto", "enumerate", "kronecker"):
        raise ValueError(f"unknown method {method!r}")
    if method == "kronecker" or (method == "auto" and size > ENUMERATION_LIMIT):
        try:
            return _kronecker_irreducible(f, budget)
        except BudgetExceeded:
            if method == "kronecker" or size > budget:
                raise
    if size > budget:
        raise BudgetExceeded(f"{size} candidate factors exceed the budget {budget}")
    for lead, tail, coeffs in _monic_candidates(F.elements(), monos):
        terms = {e: c for e, c in zip(tail, coeffs) if c}
        terms[lead] = 1
        g = Polynomial._raw(F, f.vars, terms)
        if try_exact_divide(f, g) is not None:
            return False
    return True


def _kronecker_irreducible(f: Polynomial, budget: int) -> bool:
    F, p = f.field, f.field.modulus
    n = f.nvars
    base = max(_degree_bounds(f)) + 1
    weights = [base ** (n - 1 - j) for j in range(n)]
    image = {}
    for e, c in f.terms.items():
        image[sum(a * w for a, w in zip(e, weights))] = c
    deg = max(image)
    dense = [image.get(k, 0) for k in range(deg, -1, -1)]
    _, factors = gf_factor(dense, p, ZZ)
    count = math.prod(m + 1 for _, m in factors)
    if count > budget:
        raise BudgetExceeded(f"{count} univariate divisors exceed the budget {budget}")
    powers = [[gf_pow(g, k, p, ZZ) for k in range(m + 1)] for g, m in factors]
    bounds = _degree_bounds(f)
    for choice in itertools.product(*(range(m + 1) for _, m in factors)):
        d = [ZZ(1)]
        for pw, k in zip(powers, choice):
            d = gf_mul(d, pw[k], p, ZZ)
        ddeg = len(d) - 1
        if ddeg == 0 or ddeg == deg:
            continue
        terms = {}
        for k, c in enumerate(reversed(d)):
            if c:
                e = []
                for w in weights:
                    e.append(k // w)
                    k %= w
                terms[tuple(e)] = int(c) % p
        if any(any(a > b for a, b in zip(e, bounds)) for e in terms):
            continue
        g = Polynomial._raw(F, f.vars, terms)
        if g.is_constant():
            continue
        if try_exact_divide(f, g) is not None:
            return False
    return True


# --------------------------------------------------------------------------
# extension fields (evidence only)

class _ExtensionField:
    """F_p[t]/(m(t)) with elements as coefficient tuples, low degree first."""

    def __init__(self, p: int, k: int):
        self.p, self.k = p, k
        self.modulus_poly = _first_irreducible(p, k)
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)

    def elements(self):
        return itertools.product(range(self.p), repeat=self.k)

    def embed(self, c: int):
        return (c % self.p,) + (0,) * (self.k - 1)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        p, k, m = self.p, self.k, self.modulus_poly
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # m is monic of degree k, low degree first
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                for j in range(k + 1):
                    prod[d - k + j] = (prod[d - k + j] - c * m[j]) % p
        return tuple(prod[:k])

    def inv(self, a):
        # a^(q-2) in the multiplicative group of order q - 1
        result, base, e = self.one, a, self.p ** self.k - 2
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result


def _first_irreducible(p: int, k: int):
    """Smallest monic irreducible of degree k over F_p (low degree first)."""
    if k == 1:
        return (0, 1)
    F = FieldSpec.prime(p)
    for tail in itertools.product(range(p), repeat=k):
        coeffs = tuple(reversed(tail)) + (1,)
        poly = Polynomial._raw(F, ("t",), {(d,): c for d, c in enumerate(coeffs) if c})
        if is_irreducible_bruteforce(poly):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


def _ext_exact_divides(f: dict, g: dict, K: _ExtensionField) -> bool:
    lg = max(g, key=grlex_key)
    inv = K.inv(g[lg])
    p = dict(f)
    while p:
        e = max(p, key=grlex_key)
        if not all(a >= b for a, b in zip(e, lg)):
            return False
        m = tuple(a - b for a, b in zip(e, lg))
        t = K.mul(p[e], inv)
        for ge, gc in g.items():
            key = tuple(a + b for a, b in zip(ge, m))
            v = K.sub(p.get(key, K.zero), K.mul(t, gc))
            if any(v):
                p[key] = v
            else:
                p.pop(key, None)
    return True


def is_irreducible_over_extension(f: Polynomial, k: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Brute-force irreducibility over ``F_{p^k}``.

    Evidence for absolute irreducibility only: passing for small ``k`` does
    not prove irreducibility over the algebraic closure.
    """
    _check_applicable(f)
    K = _ExtensionField(f.field.modulus, k)
    monos = monomials_up_to(f.nvars, f.total_degree() // 2, _degree_bounds(f))
    size = _enumeration_size(K.p ** k, monos)
    if size > budget:
        raise BudgetExceeded(f"{size} candidate factors exceed the budget {budget}")
    fd = {e: K.embed(c) for e, c in f.terms.items()}
    for lead, tail, coeffs in _monic_candidates(list(K.elements()), monos):
        g = {e: c for e, c in zip(tail, coeffs) if any(c)}
        g[lead] = K.one
        if _ext_exact_divides(fd, g, K):
            return False
    return True


# --------------------------------------------------------------------------
# sums of irreducibles

def irreducibles_up_to(field: FieldSpec, vars, degree_bound: int, budget: int = DEFAULT_BUDGET):
    out = []
    for g in enumerate_polynomials(field, vars, degree_bound, budget):
        if not g.is_constant() and is_irreducible_bruteforce(g, budget):
            out.append(g)
    return out


def check_sum_of_irreducibles(target: Polynomial, k: int, degree_bound: int,
                              budget: int = DEFAULT_BUDGET):
    """A list of ``k`` irreducibles of degree <= bound summing to ``target``, or ``None``.

    Multisets are searched in enumeration order, so the witness is the first
    one found and the result is deterministic.
    """
    if k < 1:
        raise ValueError("k must be positive")
    _require_prime_field(target.field)
    pool = irreducibles_up_to(target.field, target.vars, degree_bound, budget)
    index = {g: j for j, g in enumerate(pool)}
    combos = math.comb(len(pool) + k - 2, k - 1)
    if combos > budget:
        raise BudgetExceeded(f"{combos} combinations exceed the budget {budget}")
    for head in itertools.combinations_with_replacement(range(len(pool)), k - 1):
        rest = target
        for j in head:
            rest = rest - pool[j]
        j = index.get(rest)
        if j is not None and (not head or j >= head[-1]):
            return [pool[t] for t in head] + [pool[j]]
    return None


# --------------------------------------------------------------------------
# quotient-ring identity

@dataclass(frozen=True)
class QuotientIdentity:
    p: int
    i: int
    remainder_identity: bool
    product_identity: bool

    @property
    def ok(self) -> bool:
        return self.remainder_identity and self.product_identity


def quotient_identity(p: int, i: int) -> QuotientIdentity:
    """Check the two identities showing ``A = W^p X^(p+1) Y^(2pi) + 1`` factors mod ``g``.

    With ``g = w^p x^(p+1) + y^(2pi)`` in ``QQ[w, x, y]``:
    (a) ``A - w^p x^(p+1) g - (1 - w^(2p) x^(2(p+1))) == 0``;
    (b) ``g`` divides ``A - (w^p x^(p+1) + 1)(y^(2pi) + 1)``.
    """
    if p < 1 or i < 1:
        raise ValueError("p and i must be positive")
    vars = ("w", "x", "y")
    wx = Polynomial.monomial((p, p + 1, 0), vars, QQ)
    y = Polynomial.monomial((0, 0, 2 * p * i), vars, QQ)
    one = Polynomial.constant(1, vars, QQ)
    g = wx + y
    A = Polynomial.monomial((p, p + 1, 2 * p * i), vars, QQ) + one
    remainder = one - Polynomial.monomial((2 * p, 2 * (p + 1), 0), vars, QQ)
    a_ok = (A - wx * g - remainder).is_zero()
    b_ok = try_exact_divide(A - (wx + one) * (y + one), g) is not None
    return QuotientIdentity(p, i, a_ok, b_ok)


def verify_quotient_identity(p: int, i: int) -> bool:
    return quotient_identity(p, i).ok
