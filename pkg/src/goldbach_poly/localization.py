"""Sums of primes in localizations of the integers.

``S`` is generated by finitely many primes; the primes of ``S^-1 Z`` are,
up to units, the ``p`` outside ``S``.  Everything is exact rational
arithmetic; signed primes are allowed so negative targets are reachable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import isprime, nextprime, prevprime

from .errors import EmptyInterval, GoldbachError, NotInSystem, ToleranceNotReached


@dataclass(frozen=True)
class MultiplicativeSet:
    """All finite products of the generator primes (1 included)."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(sorted(int(g) for g in self.generators))
        if not gens:
            raise GoldbachError("a non-trivial system needs at least one generator")
        if len(set(gens)) != len(gens):
            raise GoldbachError(f"duplicate generators in {gens}")
        for g in gens:
            if g < 2 or not isprime(g):
                raise GoldbachError(f"generator {g} is not a positive prime")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, *generators) -> MultiplicativeSet:
        return cls(tuple(generators))

    @property
    def n0(self) -> int:
        """Least element of S above 1."""
        return self.generators[0]

    def contains(self, s: int) -> bool:
        s = int(s)
        if s < 1:
            return False
        for g in self.generators:
            while s % g == 0:
                s //= g
        return s == 1

    def __str__(self):
        return "<" + ",".join(map(str, self.generators)) + ">"


def smallest_prime_outside(S: MultiplicativeSet) -> int:
    p = 2
    while p in S.generators:
        p = nextprime(p)
    return p


@dataclass(frozen=True)
class DenseApproxResult:
    """``value = (n - 1) * p / n0^e``, written as ``n - 1`` copies of ``p / n0^e``."""

    p: int
    e: int
    n: int
    n0: int
    value: Fraction

    @property
    def prime_element(self) -> Fraction:
        return Fraction(self.p, self.n0 ** self.e)

    @property
    def copies(self) -> int:
        # n can be huge for narrow intervals far from 0, so the copies stay implicit
        return self.n - 1


def dense_approx(S: MultiplicativeSet, x0, y0) -> DenseApproxResult:
    """An element of ``(x0, y0)`` that is a finite sum of primes of ``S^-1 Z``.

    For ``y0 > 0``: ``p`` is the smallest prime outside ``S``, ``e`` the least
    exponent with ``p / n0^e < y0 - x0`` and ``n`` the least ``k`` with
    ``k p / n0^e >= y0``; then ``x0 < (n-1) p / n0^e < y0``.  When that would
    give the empty sum (an interval around 0 narrower than one step above 0)
    ``e`` is raised until at least one copy fits.  For ``y0 <= 0`` the mirrored
    interval is solved and the prime's sign flipped.
    """
    x0, y0 = Fraction(x0), Fraction(y0)
    if x0 >= y0:
        raise EmptyInterval(f"({x0}, {y0}) is empty")
    if y0 <= 0:
        r = dense_approx(S, -y0, -x0)
        return DenseApproxResult(-r.p, r.e, r.n, r.n0, -r.value)
    p, n0 = smallest_prime_outside(S), S.n0
    width = y0 - x0
    e = 0
    while Fraction(p, n0 ** e) >= width:
        e += 1
    while True:
        step = Fraction(p, n0 ** e)
        n = math.ceil(y0 / step)
        if n >= 2:
            break
        e += 1
    value = (n - 1) * step
    assert x0 < value < y0
    return DenseApproxResult(p, e, n, n0, value)


@dataclass(frozen=True)
class PrimeSeries:
    """Terms ``p_i / q^(n_i)`` with strictly increasing ``n_i``."""

    q: int
    x: Fraction
    terms: tuple  # ((signed prime, exponent), ...)
    partial_sums: tuple
    tolerance: Fraction
    converged: bool

    @property
    def remainder(self) -> Fraction:
        return self.x - (self.partial_sums[-1] if self.partial_sums else 0)

    def rows(self):
        """``(p_i, q, n_i, partial_sum)`` tuples."""
        return [(p, self.q, n, s) for (p, n), s in zip(self.terms, self.partial_sums)]


def _q_power(q, n):
    return Fraction(q) ** n


def greedy_prime_series(x, q: int, tolerance=Fraction(1, 10**6), max_terms: int = 64,
                        strict: bool = False) -> PrimeSeries:
    """Greedy expansion ``x ~ sum p_i / q^(n_i)`` with primes ``p_i != q``.

    Each step takes the least exponent above the previous one for which
    ``|r| q^n`` admits a prime other than ``q`` below it, then the largest such
    prime, signed like the remainder ``r``.  Bertrand's postulate keeps each
    new remainder below roughly half the old one.
    """
    x, tolerance = Fraction(x), Fraction(tolerance)
    if not isprime(q):
        raise GoldbachError(f"base {q} is not prime")
    if tolerance <= 0:
        raise GoldbachError("tolerance must be positive")
    # smallest admissible scaled value: 2, or 3 when q == 2
    floor_needed = 3 if q == 2 else 2
    terms, sums = [], []
    r = x
    last = None
    total = Fraction(0)
    while abs(r) >= tolerance and len(terms) < max_terms:
        a = abs(r)
        if last is None:
            n = 0
            while a * _q_power(q, n - 1) >= floor_needed:
                n -= 1
        else:
            n = last + 1
        while a * _q_power(q, n) < floor_needed:
            n += 1
        top = math.floor(a * _q_power(q, n))
        p = prevprime(top + 1)
        if p == q:
            p = prevprime(q)
        signed = p if r > 0 else -p
        total += signed / _q_power(q, n)
        r = x - total
        terms.append((signed, n))
        sums.append(total)
        last = n
    series = PrimeSeries(q, x, tuple(terms), tuple(sums), tolerance, abs(r) < tolerance)
    if strict and not series.converged:
        raise ToleranceNotReached(f"|error| {float(abs(r)):.3g} after {len(terms)} terms", series)
    return series


def representation_value(terms) -> Fraction:
    return sum((Fraction(sp * p, s) for sp, p, s in terms), Fraction(0))


def rescale_representation(terms: Sequence, S: MultiplicativeSet, s: int, m: int,
                           direction: str = "multiply"):
    """Fold ``s^m`` into numerators (``multiply``) or denominators (``divide``).

    ``terms`` are triples ``(s', p, s_i)`` standing for ``s' p / s_i``.
    """
    if not S.contains(s):
        raise NotInSystem(f"{s} is not in {S}")
    if m < 0:
        raise GoldbachError("m must be a natural number")
    factor = int(s) ** m
    if direction == "multiply":
        return [(sp * factor, p, si) for sp, p, si in terms]
    if direction == "divide":
        return [(sp, p, si * factor) for sp, p, si in terms]
    raise GoldbachError(f"direction must be multiply or divide, not {direction!r}")
