"""Command-line front end: ``goldbach-poly <command> ...``.

Exit status is 0 on success, 1 on domain errors (including a failed
certification) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import engine, geometry, localization, oracle
from .errors import GoldbachError, PolynomialSyntaxError
from .fields import FieldSpec, format_rational, parse_rational
from .forcing import ForcingData, decompose_in_forcing, normal_form
from .polynomial import GRAMMAR, Polynomial, infer_vars, parse_polynomial
from .report import fractions_text, polynomial_list, session_text


class UsageError(Exception):
    pass


def _vars(args, *texts):
    if getattr(args, "vars", None):
        return tuple(v.strip() for v in args.vars.split(",") if v.strip())
    seen = []
    for t in texts:
        for v in infer_vars(t):
            if v not in seen:
                seen.append(v)
    return tuple(seen) or ("x",)


def _field(args):
    try:
        return FieldSpec.parse(args.field)
    except GoldbachError as exc:
        raise UsageError(f"argument --field: {exc}") from None


def _poly(flag, text, vars, field):
    try:
        return parse_polynomial(text, vars, field)
    except PolynomialSyntaxError as exc:
        raise UsageError(f"argument {flag}: {exc}\ngrammar: {GRAMMAR}") from None


def _rational(flag, text):
    try:
        return parse_rational(text)
    except GoldbachError:
        raise UsageError(f"argument {flag}: expected an exact rational like 7/2, got {text!r}") from None


def _points(flag, text):
    try:
        pts = geometry.parse_points(text)
    except ValueError:
        raise UsageError(f"argument {flag}: expected integer rows like '0,0; 1,0'") from None
    if not pts:
        raise UsageError(f"argument {flag}: no points given")
    return pts


def _decimal(x: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + 2
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def _emit(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --------------------------------------------------------------------------
# commands

def cmd_decompose(args):
    F = _field(args)
    H = _poly("--poly", args.poly, _vars(args, args.poly), F)
    d = engine.decompose(H, args.mode)
    if args.json:
        _emit(json.dumps(engine.decomposition_to_dict(d), indent=2))
    else:
        _emit(session_text(d))
    return 0


def _read_document(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise GoldbachError(f"cannot read decomposition document {path!r}: {exc}") from None


def cmd_certify(args):
    if args.poly is not None:
        if not args.summands:
            raise UsageError("argument --summands: required together with --poly")
        F = _field(args)
        pieces = [s for s in args.summands.split(";") if s.strip()]
        vars = _vars(args, args.poly, *pieces)
        H = _poly("--poly", args.poly, vars, F)
        d = engine.decomposition_from_summands(H, [_poly("--summands", s, vars, F) for s in pieces], args.mode)
    else:
        d = engine.decomposition_from_dict(_read_document(args.document))
    report = engine.certify(d)
    if args.json:
        _emit(json.dumps({"ok": report.ok, "failures": list(report.failures)}, indent=2))
    else:
        _emit("ok" if report.ok else "FAILED\n" + "\n".join(report.failures))
    return 0 if report.ok else 1


def _verdict_text(v):
    lines = [f"{v.status} ({v.reason})" if v.reason else v.status]
    if v.witness:
        a, b = v.witness
        lines += ["summand A:", geometry.format_matrix(a), "summand B:", geometry.format_matrix(b)]
    return "\n".join(lines)


def cmd_polytope(args):
    op = args.op
    if op == "hull":
        _emit(geometry.hull_vertices(_points("--points", args.points)).as_matrix())
    elif op == "segment":
        a = _points("--start", args.start)[0]
        b = _points("--end", args.end)[0]
        _emit(str(geometry.segment_indecomposable(a, b)).lower())
    elif op == "pyramid":
        base = _points("--base", args.base)
        apex = _points("--apex", args.apex)[0]
        _emit(str(geometry.pyramid_indecomposable(base, apex)).lower())
    elif op == "summands":
        poly = geometry.hull_vertices(_points("--points", args.points))
        _emit(_verdict_text(geometry.polygon_summands_2d(poly, args.budget)))
    elif op == "decide":
        _emit(_verdict_text(geometry.decide_indecomposable(_points("--points", args.points), args.budget)))
    elif op == "goldbach":
        v = geometry.goldbach_condition_check(_points("--points", args.points),
                                              _points("--witness", args.witness), args.budget)
        conds = " ".join(f"({k}) {s}" for k, s in v.conditions.items())
        _emit(f"{v.status}" + (f": {v.reason}" if v.reason else "") + (f"\n{conds}" if conds else ""))
        return 0 if v.holds else 1
    return 0


def cmd_witness_split(args):
    F = _field(args)
    f = _poly("--poly", args.poly, _vars(args, args.poly), F)
    (f1, c1), (f2, c2) = engine.split_by_witness(f, _points("--witness", args.witness))
    if args.json:
        _emit(json.dumps({"input": str(f), "summands": [
            {"poly": str(f1), "certificate": c1.to_dict()},
            {"poly": str(f2), "certificate": c2.to_dict()}]}, indent=2))
    else:
        _emit(f"{f1}\n{f2}")
    return 0


def cmd_oracle(args):
    op = args.op
    if op == "quotient":
        r = oracle.quotient_identity(args.p, args.i)
        _emit(f"p={r.p} i={r.i} remainder-identity={r.remainder_identity} "
              f"product-identity={r.product_identity}\n{str(r.ok).lower()}")
        return 0 if r.ok else 1
    F = _field(args)
    if op == "enumerate":
        vars = _vars(args)
        total = oracle.count_polynomials(F, len(vars), args.deg)
        _emit(f"candidates: {total} (budget {args.budget})")
        if args.list:
            for g in oracle.enumerate_polynomials(F, vars, args.deg, args.budget):
                _emit(str(g))
        return 0
    if op == "irreducible":
        f = _poly("--poly", args.poly, _vars(args, args.poly), F)
        if args.extension > 1:
            result = oracle.is_irreducible_over_extension(f, args.extension, args.budget)
            _emit(f"{str(result).lower()} (over F{F.modulus}^{args.extension}; evidence only)")
        else:
            _emit(str(oracle.is_irreducible_bruteforce(f, args.budget, args.method)).lower())
        return 0
    if op == "sum":
        target = _poly("--target", args.target, _vars(args, args.target), F)
        witness = oracle.check_sum_of_irreducibles(target, args.k, args.deg, args.budget)
        if args.report:
            pool = oracle.irreducibles_up_to(F, target.vars, args.deg, args.budget)
            _emit(f"candidates: {oracle.count_polynomials(F, target.nvars, args.deg)} "
                  f"irreducible: {len(pool)} budget: {args.budget}")
        _emit("None" if witness is None else polynomial_list(witness))
        return 0
    raise UsageError(f"unknown oracle operation {op!r}")


def _gens(args):
    try:
        gens = [int(g) for g in args.gens.split(",") if g.strip()]
    except ValueError:
        raise UsageError("argument --gens: expected comma separated primes") from None
    return localization.MultiplicativeSet(tuple(gens))


def cmd_localize(args):
    op = args.op
    if op == "approx":
        S = _gens(args)
        x0, y0 = (_rational("--interval", t) for t in args.interval)
        r = localization.dense_approx(S, x0, y0)
        _emit(format_rational(r.value))
        if args.decimal:
            _emit(_decimal(r.value, args.decimal))
        if args.details:
            _emit(f"p={r.p} n0={r.n0} e={r.e} n={r.n} "
                  f"copies={r.copies} of {format_rational(r.prime_element)}")
        return 0
    if op == "series":
        x = _rational("--x", args.x)
        tol = _rational("--tol", args.tol)
        s = localization.greedy_prime_series(x, args.q, tol, args.max_terms)
        for p, q, n, partial in s.rows():
            shown = _decimal(partial, args.decimal) if args.decimal else format_rational(partial)
            _emit(f"{p} {q} {n} {shown}")
        err = abs(s.remainder)
        _emit(f"# error {_decimal(err, 6) if err else '0'} "
              f"{'converged' if s.converged else 'tolerance not reached'}")
        return 0 if s.converged else 1
    if op == "rescale":
        S = _gens(args)
        try:
            terms = [tuple(int(x) for x in row) for row in geometry.parse_points(args.terms)]
        except ValueError:
            raise UsageError("argument --terms: expected rows s',p,s like '1,3,4; 1,5,2'") from None
        if any(len(t) != 3 for t in terms):
            raise UsageError("argument --terms: each row needs three integers s',p,s")
        out = localization.rescale_representation(terms, S, args.s, args.m, args.direction)
        for t in out:
            _emit(" ".join(map(str, t)))
        _emit(f"# value {format_rational(localization.representation_value(out))}")
        return 0
    if op == "fractions":
        F = _field(args)
        vars = _vars(args, args.poly, args.denominator)
        H = _poly("--poly", args.poly, vars, F)
        W = _poly("--denominator", args.denominator, vars, F)
        _, pairs = engine.localize_decompose(H, W)
        _emit(fractions_text(pairs))
        return 0
    raise UsageError(f"unknown localize operation {op!r}")


def cmd_forcing(args):
    F = _field(args)
    coeffs = [_rational("--coeffs", c) for c in args.coeffs.split(",")]
    constant = _rational("--constant", args.constant)
    vars = tuple(v.strip() for v in args.vars.split(",")) if args.vars else None
    data = ForcingData.create(coeffs, constant, vars, F, args.pivot)
    element = _poly("--element", args.element, data.vars, F)
    if args.op == "normal-form":
        _emit(str(normal_form(data, element)))
        return 0
    r = decompose_in_forcing(data, element, args.mode)
    report = engine.certify(r.decomposition)
    if args.json:
        doc = engine.decomposition_to_dict(r.decomposition)
        doc["relation"] = str(data.relation())
        doc["congruent"] = r.congruent
        _emit(json.dumps(doc, indent=2))
    else:
        _emit(f"relation: {data.relation()} = 0\nnormal form: {r.normal_form}\n"
              f"summands: {polynomial_list(r.decomposition.polynomials())}\n"
              f"congruent: {str(r.congruent).lower()}\ncertified: {str(report.ok).lower()}")
    return 0 if r.congruent and report.ok else 1


def random_polynomial(rng: random.Random, field: FieldSpec, nvars: int, max_degree: int, max_terms: int):
    vars = tuple("xyzw"[:nvars]) if nvars <= 4 else tuple(f"x{k + 1}" for k in range(nvars))
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            e[rng.randrange(nvars)] += 1
        if field.is_prime_field:
            c = rng.randrange(1, field.modulus)
        else:
            c = Fraction(rng.choice([-1, 1]) * rng.randint(1, 20), rng.randint(1, 5))
        terms[tuple(e)] = c
    return Polynomial(field, vars, terms)


def cmd_selftest(args):
    rng = random.Random(args.seed)
    fields = [FieldSpec.rationals(), FieldSpec.prime(5)]
    failures = 0
    for k in range(args.count):
        H = random_polynomial(rng, rng.choice(fields), rng.randint(2, 4), 6, 8)
        for mode in engine.DecompositionMode:
            report = engine.certify(engine.decompose(H, mode))
            if not report.ok:
                failures += 1
                _emit(f"FAIL {mode.value} {H}: {report.failures}")
    _emit(f"{args.count} polynomials x 3 modes, seed {args.seed}: {failures} failures")
    return 0 if not failures else 1


# --------------------------------------------------------------------------
# parser

def _add_poly_opts(p, vars_help="comma separated variable names (default: order of appearance)"):
    p.add_argument("--vars", help=vars_help)
    p.add_argument("--field", default="QQ", help="QQ or a prime field such as F5 (default QQ)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="goldbach-poly",
        description="Certified decompositions of polynomials into absolutely irreducible summands.")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a polynomial into <= 2r certified irreducibles")
    p.add_argument("--poly", required=True)
    _add_poly_opts(p)
    p.add_argument("--mode", default="pyramid", choices=[m.value for m in engine.DecompositionMode])
    p.add_argument("--json", action="store_true", help="emit the structured decomposition document")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("certify", help="re-verify a decomposition document or an explicit summand list")
    p.add_argument("document", nargs="?", default="-", help="JSON document path, '-' for stdin")
    p.add_argument("--poly", help="input polynomial (with --summands instead of a document)")
    p.add_argument("--summands", help="';'-separated summands")
    p.add_argument("--mode", default="pyramid")
    _add_poly_opts(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("polytope", help="hulls, gcd criteria, planar summand search, Goldbach condition")
    p.add_argument("op", choices=["hull", "segment", "pyramid", "summands", "decide", "goldbach"])
    p.add_argument("--points", help="rows like '0,0; 1,0; 0,1'")
    p.add_argument("--start", help="segment start point")
    p.add_argument("--end", help="segment end point")
    p.add_argument("--base", help="pyramid base points")
    p.add_argument("--apex", help="pyramid apex")
    p.add_argument("--witness", help="witness points for the Goldbach condition")
    p.add_argument("--budget", type=int, default=geometry.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("witness-split", help="split f along verified Goldbach witness points")
    p.add_argument("--poly", required=True)
    p.add_argument("--witness", required=True)
    _add_poly_opts(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_witness_split)

    p = sub.add_parser("oracle", help="exhaustive checks over prime fields")
    p.add_argument("op", choices=["irreducible", "sum", "enumerate", "quotient"])
    p.add_argument("--poly")
    p.add_argument("--target")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--deg", type=int, default=2)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--extension", type=int, default=1, help="check over F_p^k (evidence only)")
    p.add_argument("--method", default="auto", choices=["auto", "enumerate", "kronecker"])
    p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    p.add_argument("--list", action="store_true", help="print enumerated polynomials")
    p.add_argument("--report", action="store_true", help="print candidate counts")
    _add_poly_opts(p)
    p.set_defaults(func=cmd_oracle, field="F2")

    p = sub.add_parser("localize", help="prime sums in S^-1 Z and localized decompositions")
    p.add_argument("op", choices=["approx", "series", "rescale", "fractions"])
    p.add_argument("--gens", default="2", help="generator primes of S, e.g. 2,5")
    p.add_argument("--interval", nargs=2, metavar=("X0", "Y0"), default=["0", "1"])
    p.add_argument("--x", default="0")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--tol", default="1/1000000")
    p.add_argument("--max-terms", type=int, default=64)
    p.add_argument("--terms", default="", help="rows s',p,s")
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--direction", choices=["multiply", "divide"], default="multiply")
    p.add_argument("--poly", default="0")
    p.add_argument("--denominator", default="1")
    p.add_argument("--decimal", type=int, default=0, help="also print decimals to this many digits")
    p.add_argument("--details", action="store_true")
    _add_poly_opts(p)
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("forcing", help="linear forcing algebras K[x]/(f1 x1 + ... + fn xn + f)")
    p.add_argument("op", choices=["normal-form", "decompose"])
    p.add_argument("--coeffs", required=True, help="f1,...,fn")
    p.add_argument("--constant", default="0")
    p.add_argument("--element", required=True)
    p.add_argument("--pivot", help="pivot variable name (default: first nonzero coefficient)")
    p.add_argument("--mode", default="pyramid", choices=[m.value for m in engine.DecompositionMode])
    p.add_argument("--json", action="store_true")
    _add_poly_opts(p, "comma separated variable names (default x1..xn)")
    p.set_defaults(func=cmd_forcing)

    p = sub.add_parser("selftest", help="decompose and certify random polynomials")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="same as the global --seed")
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except GoldbachError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())
