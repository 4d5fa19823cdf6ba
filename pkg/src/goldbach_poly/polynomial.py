"""Sparse multivariate polynomials with exact coefficients.

A :class:`Polynomial` maps exponent tuples to nonzero coefficients of its
:class:`~goldbach_poly.fields.FieldSpec`.  Instances are immutable; all
operations return new objects.  The canonical monomial order is graded
lexicographic with ``vars[0] > vars[1] > ...``; printing lists terms in
descending order so the text form is deterministic.

>>> f = parse_polynomial("x*y + x + y + 1", ["x", "y"])
>>> str(f * f - f)
'x^2*y^2 + 2*x^2*y + 2*x*y^2 + x^2 + 3*x*y + y^2 + x + y'
"""

from __future__ import annotations

import re
from collections.abc import Mapping, Sequence
from fractions import Fraction
from types import MappingProxyType

from .errors import (
    ArityMismatch,
    FieldError,
    FieldMismatch,
    NotAffine,
    PivotOutOfRange,
    PolyDivisionByZero,
    PolynomialSyntaxError,
    ReplacementUsesPivot,
    UnknownVariable,
)
from .fields import QQ, FieldSpec

Exponent = tuple  # tuple[int, ...]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def grlex_key(e: Exponent):
    return (sum(e), e)


class Polynomial:
    __slots__ = ("field", "vars", "_terms", "_hash")

    def __init__(self, field: FieldSpec, vars: Sequence[str], terms: Mapping | None = None):
        vars = tuple(vars)
        if not vars:
            raise ArityMismatch("at least one variable is required")
        if len(set(vars)) != len(vars):
            raise ArityMismatch(f"duplicate variable names in {vars}")
        for name in vars:
            if not _NAME_RE.match(name):
                raise UnknownVariable(f"invalid variable name {name!r}")
        n = len(vars)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ArityMismatch(f"exponent {e} does not match {n} variables")
            if any((not isinstance(k, int)) or k < 0 for k in e):
                raise ArityMismatch(f"exponent {e} must be non-negative integers")
            c = field.coerce(c)
            if e in clean:
                c = field.add(clean[e], c)
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self.field = field
        self.vars = vars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field, vars, terms):
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.field = field
        obj.vars = vars
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, vars, field=QQ):
        return cls(field, vars)

    @classmethod
    def constant(cls, c, vars, field=QQ):
        vars = tuple(vars)
        return cls(field, vars, {(0,) * len(vars): c})

    @classmethod
    def monomial(cls, exponent, vars, field=QQ, coeff=1):
        return cls(field, vars, {tuple(exponent): coeff})

    @classmethod
    def variable(cls, name, vars, field=QQ):
        vars = tuple(vars)
        if name not in vars:
            raise UnknownVariable(f"{name!r} is not among {vars}")
        e = tuple(int(v == name) for v in vars)
        return cls(field, vars, {e: 1})

    # basic accessors

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def term_count(self) -> int:
        return len(self._terms)

    def constant_coefficient(self):
        return self._terms.get((0,) * self.nvars, self.field.zero())

    def coefficient(self, exponent):
        return self._terms.get(tuple(exponent), self.field.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        zero = (0,) * self.nvars
        return all(e == zero for e in self._terms)

    def total_degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self._terms), default=-1)

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        e = max(self._terms, key=grlex_key)
        return e, self._terms[e]

    def divisible_by_variable(self) -> bool:
        """True if some variable divides every term (false for zero)."""
        if not self._terms:
            return False
        return any(all(e[j] > 0 for e in self._terms) for j in range(self.nvars))

    def ring(self):
        return (self.field, self.vars)

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.vars == other.vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            try:
                return self == Polynomial.constant(other, self.vars, self.field)
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.vars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # arithmetic

    def _check(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(other, self.vars, self.field)
        if not isinstance(other, Polynomial):
            raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if other.vars != self.vars:
            raise ArityMismatch(f"variables {self.vars} vs {other.vars}")
        return other

    def __add__(self, other):
        other = self._check(other)
        F = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = F.add(out.get(e, 0), c) if e in out else c
            if s:
                out[e] = s
            else:
                del out[e]
        return Polynomial._raw(F, self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial._raw(F, self.vars, {e: F.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        F = self.field
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = F.mul(c1, c2)
                if e in out:
                    s = F.add(out[e], c)
                    if s:
                        out[e] = s
                    else:
                        del out[e]
                elif c:
                    out[e] = c
        return Polynomial._raw(F, self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.vars, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        F = self.field
        c = F.coerce(c)
        if not c:
            return Polynomial._raw(F, self.vars, {})
        return Polynomial._raw(F, self.vars, {e: F.mul(v, c) for e, v in self._terms.items()})

    def mul_monomial(self, exponent, coeff=1):
        F = self.field
        coeff = F.coerce(coeff)
        if not coeff:
            return Polynomial._raw(F, self.vars, {})
        return Polynomial._raw(
            F, self.vars,
            {tuple(a + b for a, b in zip(e, exponent)): F.mul(c, coeff) for e, c in self._terms.items()},
        )

    def with_vars(self, vars: Sequence[str]) -> Polynomial:
        """Re-express in a superset of the variables (missing ones get exponent 0)."""
        vars = tuple(vars)
        missing = [v for v in self.vars if v not in vars]
        if missing:
            raise UnknownVariable(f"variables {missing} are absent from {vars}")
        index = [self.vars.index(v) if v in self.vars else None for v in vars]
        terms = {tuple(0 if k is None else e[k] for k in index): c for e, c in self._terms.items()}
        return Polynomial(self.field, vars, terms)

    # text form

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={list(self.vars)}, field={self.field})"


# --------------------------------------------------------------------------
# module-level operations

def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + f._check(g)


def negate(f: Polynomial) -> Polynomial:
    return -f


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * f._check(g)


def support(f: Polynomial) -> frozenset:
    return f.support()


def term_count(f: Polynomial) -> int:
    return f.term_count()


def constant_coefficient(f: Polynomial):
    return f.constant_coefficient()


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def divmod_poly(f: Polynomial, g: Polynomial):
    """Single-divisor division under graded lex: ``f = q*g + r``.

    No term of ``r`` is divisible by the leading monomial of ``g``.
    """
    g = f._check(g)
    if g.is_zero():
        raise PolyDivisionByZero("division by the zero polynomial")
    F = f.field
    lg, lc = g.leading_term()
    lc_inv = F.inv(lc)
    p = dict(f._terms)
    q, r = {}, {}
    while p:
        e = max(p, key=grlex_key)
        c = p[e]
        if _divides(lg, e):
            m = tuple(a - b for a, b in zip(e, lg))
            t = F.mul(c, lc_inv)
            q[m] = t
            for ge, gc in g._terms.items():
                k = tuple(a + b for a, b in zip(ge, m))
                v = F.sub(p.get(k, F.zero()), F.mul(t, gc))
                if v:
                    p[k] = v
                else:
                    p.pop(k, None)
        else:
            r[e] = c
            del p[e]
    return Polynomial._raw(F, f.vars, q), Polynomial._raw(F, f.vars, r)


def try_exact_divide(f: Polynomial, g: Polynomial) -> Polynomial | None:
    """Return ``q`` with ``f == q*g``, or ``None`` when ``g`` does not divide ``f``.

    {g} is a Groebner basis of (g), so a nonzero remainder decides
    non-divisibility; we stop at the first term that would go to the remainder.
    """
    g = f._check(g)
    if g.is_zero():
        raise PolyDivisionByZero("division by the zero polynomial")
    F = f.field
    lg, lc = g.leading_term()
    lc_inv = F.inv(lc)
    p = dict(f._terms)
    q = {}
    while p:
        e = max(p, key=grlex_key)
        if not _divides(lg, e):
            return None
        m = tuple(a - b for a, b in zip(e, lg))
        t = F.mul(p[e], lc_inv)
        q[m] = t
        for ge, gc in g._terms.items():
            k = tuple(a + b for a, b in zip(ge, m))
            v = F.sub(p.get(k, F.zero()), F.mul(t, gc))
            if v:
                p[k] = v
            else:
                p.pop(k, None)
    return Polynomial._raw(F, f.vars, q)


def substitute_linear(f: Polynomial, pivot: int | str, replacement: Polynomial) -> Polynomial:
    """Substitute an affine form for one variable and drop it from the ring.

    ``replacement`` lives in the same ring as ``f`` but must not mention the
    pivot.  The result lives in the ring without the pivot variable.
    """
    if isinstance(pivot, str):
        if pivot not in f.vars:
            raise PivotOutOfRange(f"{pivot!r} is not a variable of {f.vars}")
        pivot = f.vars.index(pivot)
    if not 0 <= pivot < f.nvars:
        raise PivotOutOfRange(f"pivot {pivot} out of range for {f.nvars} variables")
    if f.nvars < 2:
        raise PivotOutOfRange("cannot eliminate the only variable")
    replacement = f._check(replacement)
    if replacement.degree_in(pivot) > 0:
        raise ReplacementUsesPivot(f"replacement {replacement} mentions {f.vars[pivot]}")
    if replacement.total_degree() > 1:
        raise NotAffine(f"replacement {replacement} is not affine")

    rest = f.vars[:pivot] + f.vars[pivot + 1:]
    F = f.field

    def drop(e):
        return e[:pivot] + e[pivot + 1:]

    r = Polynomial._raw(F, rest, {drop(e): c for e, c in replacement._terms.items()})
    powers = {0: Polynomial.constant(1, rest, F)}
    out = Polynomial.zero(rest, F)
    for e, c in f._terms.items():
        k = e[pivot]
        if k not in powers:
            powers[k] = r ** k
        out = out + powers[k].mul_monomial(drop(e), c)
    return out


# --------------------------------------------------------------------------
# formatting

def format_monomial(e: Exponent, vars: Sequence[str]) -> str:
    parts = []
    for name, k in zip(vars, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    out = []
    rational = f.field.modulus is None
    for i, (e, c) in enumerate(f.sorted_terms()):
        negative = rational and c < 0
        a = -c if negative else c
        mono = format_monomial(e, f.vars)
        if not mono:
            body = f.field.format(a)
        elif a == 1:
            body = mono
        else:
            body = f"{f.field.format(a)}*{mono}"
        if i == 0:
            out.append(("-" if negative else "") + body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)


# --------------------------------------------------------------------------
# parsing

GRAMMAR = (
    "expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*; "
    "factor := ('-'|'+') factor | primary ('^' INT)?; primary := INT | VAR | '(' expr ')'"
)

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("INT", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("VAR", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("OP", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("END", None, n))
    return tokens


class _Parser:
    def __init__(self, text, vars, field):
        self.text = text
        self.vars = vars
        self.field = field
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise PolynomialSyntaxError(message, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "END":
            self.fail("empty expression")
        result = self.expr()
        if self.peek()[0] != "END":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return result

    def expr(self):
        value = self.term()
        while self.peek()[:2] in (("OP", "+"), ("OP", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[:2] in (("OP", "*"), ("OP", "/")):
            op = self.take()[1]
            tok = self.peek()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant():
                    self.fail("division is only allowed by constants", tok)
                c = rhs.constant_coefficient()
                if not c:
                    self.fail("division by zero", tok)
                value = value.scale(self.field.inv(c))
        return value

    def factor(self):
        tok = self.peek()
        if tok[:2] == ("OP", "-"):
            self.take()
            return -self.factor()
        if tok[:2] == ("OP", "+"):
            self.take()
            return self.factor()
        base = self.primary()
        if self.peek()[:2] == ("OP", "^"):
            self.take()
            exp = self.take()
            if exp[0] != "INT":
                self.fail("exponent must be a non-negative integer literal", exp)
            base = base ** exp[1]
        return base

    def primary(self):
        tok = self.take()
        kind, value, _ = tok
        if kind == "INT":
            return Polynomial.constant(value, self.vars, self.field)
        if kind == "VAR":
            if value not in self.vars:
                raise UnknownVariable(f"unknown variable {value!r} at position {tok[2]} (declared: {', '.join(self.vars)})")
            return Polynomial.variable(value, self.vars, self.field)
        if tok[:2] == ("OP", "("):
            inner = self.expr()
            close = self.take()
            if close[:2] != ("OP", ")"):
                self.fail("expected ')'", close)
            return inner
        self.fail("expected a number, variable or '('", tok)


def parse_polynomial(text: str, vars: Sequence[str] | None = None, field: FieldSpec = QQ) -> Polynomial:
    """Parse ``text`` into a canonical :class:`Polynomial`.

    ``vars`` defaults to the identifiers of ``text`` in order of first
    appearance.  ``/`` is accepted when the divisor is a nonzero constant so
    rational coefficients survive a format/parse round trip.
    """
    if vars is None:
        vars = infer_vars(text)
    vars = tuple(vars)
    # validates names and distinctness
    Polynomial.zero(vars, field)
    return _Parser(text, vars, field).parse()


def infer_vars(text: str) -> tuple:
    seen = []
    for tok in _tokenize(text):
        if tok[0] == "VAR" and tok[1] not in seen:
            seen.append(tok[1])
    return tuple(seen) or ("x",)
