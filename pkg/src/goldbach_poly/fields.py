"""Coefficient fields: the rationals and prime fields."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from .errors import FieldError


@dataclass(frozen=True)
class FieldSpec:
    """Either ``QQ`` (``modulus is None``) or the prime field ``F_p``.

    Rational coefficients are :class:`fractions.Fraction`; prime-field
    coefficients are plain ints in ``[0, p)``.
    """

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is None:
            return
        if not isinstance(self.modulus, int) or isinstance(self.modulus, bool):
            raise FieldError(f"modulus must be an integer, got {self.modulus!r}")
        if self.modulus == 0:
            raise FieldError("zero modulus")
        if self.modulus < 2 or not isprime(self.modulus):
            raise FieldError(f"modulus {self.modulus} is not prime")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Accepts ``QQ``, ``Q``, ``F5``, ``GF(5)``, ``Fp5`` (case-insensitive)."""
        t = text.strip().upper()
        if t in ("QQ", "Q"):
            return cls.rationals()
        m = re.fullmatch(r"(?:FP|F|GF)\(?(\d+)\)?", t)
        if not m:
            raise FieldError(f"unrecognised field {text!r}; expected QQ or Fp such as F5")
        return cls.prime(int(m.group(1)))

    @property
    def is_prime_field(self) -> bool:
        return self.modulus is not None

    @property
    def characteristic(self) -> int:
        return self.modulus or 0

    def __str__(self):
        return "QQ" if self.modulus is None else f"F{self.modulus}"

    # element arithmetic

    def coerce(self, value):
        p = self.modulus
        if p is None:
            if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
                return Fraction(value)
            raise FieldError(f"cannot coerce {value!r} into QQ")
        if isinstance(value, bool):
            raise FieldError(f"cannot coerce {value!r} into F{p}")
        if isinstance(value, int):
            return value % p
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldError(f"{value} has no image in F{p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        raise FieldError(f"cannot coerce {value!r} into F{p}")

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        if self.modulus is None:
            return a + b
        return (a + b) % self.modulus

    def sub(self, a, b):
        if self.modulus is None:
            return a - b
        return (a - b) % self.modulus

    def neg(self, a):
        if self.modulus is None:
            return -a
        return -a % self.modulus

    def mul(self, a, b):
        if self.modulus is None:
            return a * b
        return a * b % self.modulus

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.modulus is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.modulus)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        """All elements of a prime field, in increasing residue order."""
        if self.modulus is None:
            raise FieldError("QQ is infinite")
        return range(self.modulus)

    def format(self, c) -> str:
        if self.modulus is None:
            return str(c)
        return str(int(c))


QQ = FieldSpec.rationals()


def format_rational(x: Fraction) -> str:
    """``a/b``, or just ``a`` for integers."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FieldError(f"not an exact rational: {text!r}") from exc
