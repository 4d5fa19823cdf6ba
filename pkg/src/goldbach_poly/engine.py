"""Constructive decomposition of polynomials into certified irreducible summands.

Every nonconstant term ``a*x^i`` of ``H`` is split through a lattice
triangle ``conv{0, i, w}`` whose gcd certificate makes both

    A1 = a*x^i + x^w + 1        and        A2 = -x^w - 1

absolutely irreducible; the constant term is split linearly.  With ``r``
nonzero terms this gives at most ``2r`` summands (two for zero).  Each
summand carries a :class:`SummandCertificate` that :func:`certify`
re-checks through :mod:`goldbach_poly.geometry`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from . import geometry
from .errors import (
    ArityTooSmall,
    DenominatorNotInSystem,
    DocumentError,
    FieldError,
    GoldbachError,
    WitnessRejected,
    ZeroExponent,
)
from .fields import FieldSpec
from .polynomial import Polynomial, parse_polynomial


class DecompositionMode(str, enum.Enum):
    SHORTCUT = "shortcut"
    PYRAMID = "pyramid"
    LOCALIZATION = "localization"

    @classmethod
    def parse(cls, value) -> DecompositionMode:
        if isinstance(value, cls):
            return value
        aliases = {"uniform": cls.PYRAMID, "uniformpyramid": cls.PYRAMID,
                   "localizationsafe": cls.LOCALIZATION, "localisation": cls.LOCALIZATION}
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise GoldbachError(f"unknown mode {value!r}; expected shortcut, pyramid or localization") from None


@dataclass(frozen=True)
class WChoice:
    """Auxiliary exponent ``w`` chosen for the term with exponent ``monomial``.

    ``permutation[k]`` is the original slot moved to slot ``k``; ``p`` is the
    offset used for three or more variables (``None`` for two).
    """

    monomial: tuple
    w: tuple
    p: int | None
    permutation: tuple


SEGMENT_GCD = "segment_gcd"
PYRAMID_GCD = "pyramid_gcd"
LINEAR = "linear"
WITNESS_SPLIT = "witness_split"
CERTIFICATE_KINDS = (SEGMENT_GCD, PYRAMID_GCD, LINEAR, WITNESS_SPLIT)


@dataclass(frozen=True)
class SummandCertificate:
    kind: str
    data: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def segment(cls, endpoint):
        return cls(SEGMENT_GCD, {"endpoint": tuple(endpoint)})

    @classmethod
    def pyramid(cls, i, w):
        return cls(PYRAMID_GCD, {"i": tuple(i), "w": tuple(w)})

    @classmethod
    def linear(cls):
        return cls(LINEAR, {})

    @classmethod
    def witness_split(cls, witness):
        return cls(WITNESS_SPLIT, {"witness": tuple(tuple(w) for w in witness)})

    def __eq__(self, other):
        if not isinstance(other, SummandCertificate):
            return NotImplemented
        return self.kind == other.kind and self.data == other.data

    def __hash__(self):
        return hash((self.kind, tuple(sorted(self.data.items()))))

    def to_dict(self):
        return {"type": self.kind, "data": {k: _jsonable(v) for k, v in sorted(self.data.items())}}

    @classmethod
    def from_dict(cls, d):
        try:
            kind = d["type"]
            data = d.get("data", {}) or {}
        except (TypeError, KeyError) as exc:
            raise DocumentError(f"bad certificate {d!r}") from exc
        if kind not in CERTIFICATE_KINDS:
            raise DocumentError(f"unknown certificate type {kind!r}")
        try:
            if kind == SEGMENT_GCD:
                return cls.segment(_ints(data["endpoint"]))
            if kind == PYRAMID_GCD:
                return cls.pyramid(_ints(data["i"]), _ints(data["w"]))
            if kind == WITNESS_SPLIT:
                return cls.witness_split([_ints(w) for w in data["witness"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"bad {kind} certificate data {data!r}") from exc
        return cls.linear()


def _ints(v):
    return tuple(int(x) for x in v)


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    return v


@dataclass(frozen=True)
class Piece:
    """The summands produced for one term (or for the constant bucket)."""

    monomial: tuple
    coefficient: object
    choice: WChoice | None
    summands: tuple  # ((Polynomial, SummandCertificate), ...)


@dataclass(frozen=True)
class Decomposition:
    input: Polynomial
    mode: DecompositionMode
    pieces: tuple = ()
    summand_list: tuple | None = None

    @property
    def summands(self) -> tuple:
        if self.summand_list is not None:
            return self.summand_list
        return tuple(s for piece in self.pieces for s in piece.summands)

    @property
    def w_choices(self) -> tuple:
        return tuple(p.choice for p in self.pieces if p.choice is not None)

    def polynomials(self):
        return [s for s, _ in self.summands]

    def total(self) -> Polynomial:
        total = Polynomial.zero(self.input.vars, self.input.field)
        for s, _ in self.summands:
            total = total + s
        return total


# --------------------------------------------------------------------------
# choosing w

def select_w(i, n: int | None = None) -> WChoice:
    """Deterministic auxiliary exponent for the nonzero exponent ``i``.

    Two variables: ``(i1, (i1+1)^(i2+1))`` when ``i1 != 0``, otherwise
    ``((i2+1)^(i1+1), i2)``.  Three or more: in coordinates where slot
    ``s >= 3`` carries a nonzero entry, ``p = prod(nonzero entries) + 2`` and
    ``w = (p, p+1, 0, ..., 2*i_s*p at s, 0, ...)``.  If no such slot exists the
    smallest nonzero slot is swapped with the last one first.
    """
    i = tuple(int(x) for x in i)
    n = len(i) if n is None else n
    if n < 2:
        raise ArityTooSmall("at least two variables are required")
    if len(i) != n:
        raise ArityTooSmall(f"exponent {i} does not have {n} entries")
    if not any(i):
        raise ZeroExponent("the zero exponent has no w point")
    identity = tuple(range(n))

    if n == 2:
        i1, i2 = i
        if i1 != 0:
            return WChoice(i, (i1, (i1 + 1) ** (i2 + 1)), None, identity)
        return WChoice(i, ((i2 + 1) ** (i1 + 1), i2), None, identity)

    nonzero = [k for k in range(n) if i[k]]
    high = [k for k in nonzero if k >= 2]
    perm = list(identity)
    if high:
        s = max(high)
    else:
        j = min(nonzero)
        perm[j], perm[n - 1] = perm[n - 1], perm[j]
        s = n - 1
    ip = [i[perm[k]] for k in range(n)]
    p = math.prod(x for x in ip if x) + 2
    wp = [0] * n
    wp[0], wp[1] = p, p + 1
    wp[s] = 2 * ip[s] * p
    w = [0] * n
    for k in range(n):
        w[perm[k]] = wp[k]
    return WChoice(i, tuple(w), p, tuple(perm))


# --------------------------------------------------------------------------
# decomposition

def _constant_pieces(H: Polynomial, c, mode: DecompositionMode):
    F, vars = H.field, H.vars
    x1 = Polynomial.variable(vars[0], vars, F)
    lead = x1
    if mode is DecompositionMode.LOCALIZATION:
        lead = x1 + Polynomial.variable(vars[1], vars, F)
    zero = (0,) * len(vars)
    return Piece(zero, c, None, (
        (lead + Polynomial.constant(c, vars, F), SummandCertificate.linear()),
        (-lead, SummandCertificate.linear()),
    ))


def _pyramid_piece(H: Polynomial, e, a) -> Piece:
    F, vars = H.field, H.vars
    choice = select_w(e, len(vars))
    zero = (0,) * len(vars)
    one = F.one()
    a1 = Polynomial(F, vars, {e: a, choice.w: one, zero: one})
    a2 = Polynomial(F, vars, {choice.w: F.neg(one), zero: F.neg(one)})
    return Piece(e, a, choice, (
        (a1, SummandCertificate.pyramid(e, choice.w)),
        (a2, SummandCertificate.segment(choice.w)),
    ))


def decompose(H: Polynomial, mode=DecompositionMode.PYRAMID) -> Decomposition:
    """Write ``H`` as a sum of at most ``2r`` certified irreducibles.

    Terms are processed in descending graded-lex order and the constant
    bucket comes last.  In shortcut mode a term with ``gcd(i) == 1`` becomes
    ``a*x^i - 1`` and pushes ``+1`` into the constant bucket, except when that
    would break the ``2r`` bound (one such term and no constant term), where
    the term falls back to the triangle pair.
    """
    mode = DecompositionMode.parse(mode)
    if H.nvars < 2:
        raise ArityTooSmall("decompositions need at least two variables")
    F, vars = H.field, H.vars
    zero = (0,) * len(vars)
    if H.is_zero():
        return Decomposition(H, mode, (_constant_pieces(H, F.zero(), mode),))

    terms = [(e, c) for e, c in H.sorted_terms() if e != zero]
    bucket = H.constant_coefficient()

    shortcut = set()
    if mode is DecompositionMode.SHORTCUT:
        shortcut = {e for e, _ in terms if geometry.gcd_of_vector(e) == 1}
        if len(shortcut) == 1 and not bucket:
            shortcut = set()

    pieces = []
    one = F.one()
    for e, a in terms:
        if e in shortcut:
            s = Polynomial(F, vars, {e: a, zero: F.neg(one)})
            pieces.append(Piece(e, a, None, ((s, SummandCertificate.segment(e)),)))
            bucket = F.add(bucket, one)
        else:
            pieces.append(_pyramid_piece(H, e, a))
    if bucket:
        pieces.append(_constant_pieces(H, bucket, mode))
    return Decomposition(H, mode, tuple(pieces))


# --------------------------------------------------------------------------
# certificates

def newton_vertices(f: Polynomial):
    return geometry.hull_vertices(list(f.support()))


def infer_certificate(f: Polynomial) -> SummandCertificate:
    """Guess the certificate shape of a summand from its support alone."""
    zero = (0,) * f.nvars
    supp = sorted(f.support(), key=lambda e: (sum(e), e))
    if f.total_degree() == 1:
        return SummandCertificate.linear()
    if zero in supp and len(supp) == 2:
        return SummandCertificate.segment(supp[1])
    if zero in supp and len(supp) == 3:
        return SummandCertificate.pyramid(supp[1], supp[2])
    return SummandCertificate.witness_split(())


def validate_certificate(f: Polynomial, cert: SummandCertificate) -> list:
    """Reasons the certificate fails for ``f``; empty when it holds."""
    problems = []
    n = f.nvars
    zero = (0,) * n
    supp = f.support()
    if f.is_zero():
        return ["summand is zero"]
    if cert.kind == LINEAR:
        if f.total_degree() != 1:
            problems.append(f"linear certificate but total degree {f.total_degree()}")
        return problems
    if f.divisible_by_variable():
        problems.append("summand is divisible by a variable")
    if cert.kind == SEGMENT_GCD:
        end = tuple(cert.data.get("endpoint", ()))
        if len(end) != n:
            return problems + ["segment endpoint has wrong arity"]
        if supp != {zero, end}:
            problems.append(f"support {sorted(supp)} is not the segment 0 -> {end}")
        elif not geometry.segment_indecomposable(zero, end):
            problems.append(f"gcd{end} = {geometry.gcd_of_vector(end)} != 1")
    elif cert.kind == PYRAMID_GCD:
        i = tuple(cert.data.get("i", ()))
        w = tuple(cert.data.get("w", ()))
        if len(i) != n or len(w) != n:
            return problems + ["triangle data has wrong arity"]
        if supp != {zero, i, w}:
            problems.append(f"support {sorted(supp)} is not the triangle 0, {i}, {w}")
        elif geometry.rank([i, w]) != 2:
            problems.append(f"{i} and {w} are parallel")
        elif not geometry.pyramid_indecomposable([i, w], zero):
            problems.append(f"gcd({i}, {w}) = {geometry.gcd_of_family([i, w])} != 1")
    elif cert.kind == WITNESS_SPLIT:
        verdict = geometry.decide_indecomposable(list(supp))
        if not verdict.indecomposable:
            problems.append(f"Newton polytope is {verdict.status} ({verdict.reason})")
    else:
        problems.append(f"unknown certificate kind {cert.kind!r}")
    return problems


@dataclass(frozen=True)
class CertificationReport:
    ok: bool
    failures: tuple = ()


def certify(d: Decomposition) -> CertificationReport:
    """Re-verify the sum, the ``2r`` bound and every summand certificate."""
    failures = []
    H = d.input
    for s, _ in d.summands:
        if s.field != H.field or s.vars != H.vars:
            failures.append(f"summand {s} lives in a different ring")
    if not failures:
        if d.total() != H:
            failures.append(f"sum mismatch: summands add to {d.total()}, input is {H}")
    bound = 2 * max(H.term_count(), 1)
    if len(d.summands) > bound:
        failures.append(f"{len(d.summands)} summands exceed the bound {bound}")
    for k, (s, cert) in enumerate(d.summands):
        for problem in validate_certificate(s, cert):
            failures.append(f"summand {k + 1} ({s}): {problem}")
    return CertificationReport(not failures, tuple(failures))


def decomposition_from_summands(H: Polynomial, summands, mode=DecompositionMode.PYRAMID) -> Decomposition:
    """Wrap externally supplied summands, inferring certificates where missing."""
    pairs = []
    for item in summands:
        if isinstance(item, Polynomial):
            pairs.append((item, infer_certificate(item)))
        else:
            pairs.append((item[0], item[1]))
    return Decomposition(H, DecompositionMode.parse(mode), (), tuple(pairs))


# --------------------------------------------------------------------------
# witness splitting

def split_by_witness(f: Polynomial, witness):
    """``f = (f + sum x^w) + (-sum x^w)`` for a verified Goldbach witness."""
    witness = [tuple(int(x) for x in w) for w in witness]
    if f.is_zero():
        raise WitnessRejected("the zero polynomial has no Newton polytope")
    if f.divisible_by_variable():
        raise WitnessRejected("f is divisible by a variable")
    verdict = geometry.goldbach_condition_check(list(f.support()), witness)
    if not verdict.holds:
        raise WitnessRejected(f"Goldbach condition {verdict.status}: {verdict.reason or verdict.conditions}")
    F, vars = f.field, f.vars
    extra = Polynomial(F, vars, {w: 1 for w in dict.fromkeys(witness)})
    f1, f2 = f + extra, -extra
    expected = geometry.hull_vertices(list(f.support()) + witness).vertices
    if newton_vertices(f1).vertices != expected:
        raise WitnessRejected("coefficients cancel: f + sum x^w loses a vertex of the joint hull")
    cert = SummandCertificate.witness_split(witness)
    for g in (f1, f2):
        problems = validate_certificate(g, cert)
        if problems:
            raise WitnessRejected("; ".join(problems))
    return (f1, cert), (f2, cert)


# --------------------------------------------------------------------------
# localization

@dataclass(frozen=True)
class MonomialSystem:
    """The multiplicative system of nonzero scalar multiples of monomials."""

    def contains(self, W: Polynomial) -> bool:
        return W.term_count() == 1

    def __str__(self):
        return "monomials"


def localize_decompose(H: Polynomial, W: Polynomial, system=None):
    """Irreducible fractions ``I_b / W`` summing to ``H / W``.

    Summands come from the localization-safe decomposition, so none is a
    monomial and none lies in the monomial system.
    """
    system = system or MonomialSystem()
    H._check(W)
    if not system.contains(W):
        raise DenominatorNotInSystem(f"{W} is not in the system of {system}")
    d = decompose(H, DecompositionMode.LOCALIZATION)
    return d, [(s, W) for s, _ in d.summands]


# --------------------------------------------------------------------------
# documents

def decomposition_to_dict(d: Decomposition) -> dict:
    return {
        "input": str(d.input),
        "field": str(d.input.field),
        "vars": list(d.input.vars),
        "mode": d.mode.value,
        "summands": [{"poly": str(s), "certificate": c.to_dict()} for s, c in d.summands],
        "wChoices": [
            {"monomial": list(c.monomial), "w": list(c.w), "p": c.p, "permutation": list(c.permutation)}
            for c in d.w_choices
        ],
    }


def decomposition_from_dict(doc: dict) -> Decomposition:
    try:
        field_ = FieldSpec.parse(doc["field"])
        vars = tuple(doc["vars"])
        H = parse_polynomial(doc["input"], vars, field_)
        mode = DecompositionMode.parse(doc.get("mode", "pyramid"))
        summands = tuple(
            (parse_polynomial(s["poly"], vars, field_), SummandCertificate.from_dict(s["certificate"]))
            for s in doc["summands"]
        )
        choices = tuple(
            WChoice(_ints(c["monomial"]), _ints(c["w"]), c.get("p"), _ints(c["permutation"]))
            for c in doc.get("wChoices", [])
        )
    except (KeyError, TypeError, FieldError) as exc:
        raise DocumentError(f"malformed decomposition document: {exc}") from exc
    return _Loaded(H, mode, (), summands, choices)


@dataclass(frozen=True)
class _Loaded(Decomposition):
    loaded_choices: tuple = ()

    @property
    def w_choices(self) -> tuple:
        return self.loaded_choices
