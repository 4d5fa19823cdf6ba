"""Integral polytope geometry for Newton polytopes.

Everything here is exact: points are integer tuples, linear algebra runs on
:class:`fractions.Fraction`.  Indecomposability is decided by

* the segment criterion (primitive edge vector),
* the pyramid criterion (apex over a base lying in a hyperplane),
* an exhaustive edge-splitting search for lattice polygons in the plane.

Anything these cannot settle comes back as ``unknown``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ApexInBaseHyperplane, DegenerateSegment, DimensionMismatch

Point = tuple

DEFAULT_BUDGET = 10**6
DEFAULT_COORD_BOUND = 64

INDECOMPOSABLE = "indecomposable"
DECOMPOSABLE = "decomposable"
UNKNOWN = "unknown"


def gcd_of_vector(v: Sequence[int]) -> int:
    """Non-negative gcd of the entries; 0 for the zero or empty vector."""
    return math.gcd(*v) if len(v) else 0


def gcd_of_family(vs: Sequence[Sequence[int]]) -> int:
    return math.gcd(*(x for v in vs for x in v)) if vs else 0


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _check_dim(points):
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        raise DimensionMismatch("empty point set")
    d = len(pts[0])
    if d == 0 or any(len(p) != d for p in pts):
        raise DimensionMismatch("points must share one positive dimension")
    return pts, d


# --------------------------------------------------------------------------
# exact linear algebra

def _row_reduce(rows):
    """Reduced row echelon form over QQ; returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(vectors) -> int:
    vectors = [v for v in vectors]
    if not vectors:
        return 0
    return len(_row_reduce(vectors)[1])


def affine_dimension(points) -> int:
    pts = list(points)
    if not pts:
        return -1
    return rank([_sub(p, pts[0]) for p in pts[1:]])


def in_affine_hull(p, points) -> bool:
    pts = list(points)
    base = [_sub(q, pts[0]) for q in pts[1:]]
    return rank(base + [_sub(p, pts[0])]) == rank(base)


def _solve(columns, b):
    """Solve sum(mu_j * columns[j]) == b for linearly independent columns.

    Returns the unique solution or ``None`` when inconsistent.
    """
    k = len(columns)
    n = len(b)
    aug = [[columns[j][i] for j in range(k)] + [b[i]] for i in range(n)]
    m, pivots = _row_reduce(aug)
    if k in pivots:
        return None
    sol = [Fraction(0)] * k
    for row, c in zip(m, pivots):
        sol[c] = row[k]
    return sol


def in_convex_hull(p, points) -> bool:
    """Exact test for ``p in conv(points)`` via Caratheodory enumeration."""
    pts = list(dict.fromkeys(tuple(q) for q in points))
    if not pts:
        return False
    if p in pts:
        return True
    d = len(p)
    for size in range(2, min(d + 1, len(pts)) + 1):
        for subset in itertools.combinations(pts, size):
            q0 = subset[0]
            cols = [_sub(q, q0) for q in subset[1:]]
            if rank(cols) != len(cols):
                continue
            mu = _solve(cols, _sub(p, q0))
            if mu is not None and all(x >= 0 for x in mu) and sum(mu) <= 1:
                return True
    return False


# --------------------------------------------------------------------------
# polytopes

@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of integral points, stored by its sorted vertex list."""

    dim: int
    vertices: tuple

    def as_matrix(self) -> str:
        return format_matrix(self.vertices)


def format_matrix(rows) -> str:
    """Integer matrix in the ``| 1 1 |`` block layout, one row per line."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return ""
    widths = [max(len(str(r[j])) for r in rows) for j in range(len(rows[0]))]
    return "\n".join(
        "| " + " ".join(str(x).rjust(w) for x, w in zip(r, widths)) + " |" for r in rows
    )


def parse_points(text: str):
    """``"0,0; 1,0; 0,1"`` (or newline separated rows) -> list of int tuples."""
    rows = [r for r in text.replace("\n", ";").replace("|", "").split(";") if r.strip()]
    return [tuple(int(x) for x in r.replace(",", " ").split()) for r in rows]


def hull_vertices(points) -> LatticePolytope:
    """The vertex set of ``conv(points)``.

    A point is kept iff it is not a convex combination of the other distinct
    points; the check is exact.
    """
    pts, d = _check_dim(points)
    pts = sorted(set(pts))
    verts = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not others or not in_convex_hull(p, others):
            verts.append(p)
    return LatticePolytope(d, tuple(verts))


def minkowski_sum(a, b) -> LatticePolytope:
    return hull_vertices([_add(p, q) for p in a for q in b])


# --------------------------------------------------------------------------
# gcd criteria

def segment_indecomposable(a, b) -> bool:
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise DimensionMismatch("segment endpoints differ in dimension")
    if a == b:
        raise DegenerateSegment("segment endpoints coincide")
    return gcd_of_vector(_sub(b, a)) == 1


def pyramid_indecomposable(base, apex) -> bool:
    """Gcd criterion for ``conv(base, apex)`` with ``apex`` off the base's hyperplane.

    The base is reduced to its vertices first; the apex must lie outside the
    affine hull of the base (which then sits inside some hyperplane missing it).
    """
    pts, d = _check_dim(list(base) + [apex])
    apex = pts[-1]
    base_vertices = hull_vertices(pts[:-1]).vertices
    if in_affine_hull(apex, base_vertices):
        raise ApexInBaseHyperplane(f"apex {apex} lies in the affine hull of the base")
    return gcd_of_family([_sub(apex, v) for v in base_vertices]) == 1


# --------------------------------------------------------------------------
# verdicts

@dataclass(frozen=True)
class DecomposabilityVerdict:
    """Outcome of an indecomposability decision.

    ``witness`` is a pair of vertex tuples ``(A, B)`` with ``A + B`` equal to
    the input; criterion-based ``decomposable`` verdicts may omit it.
    """

    status: str
    reason: str = ""
    witness: tuple | None = None

    @property
    def indecomposable(self) -> bool:
        return self.status == INDECOMPOSABLE

    @property
    def decomposable(self) -> bool:
        return self.status == DECOMPOSABLE

    @property
    def unknown(self) -> bool:
        return self.status == UNKNOWN


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _ccw_cycle(vertices):
    """Counter-clockwise vertex cycle of a planar point set (monotone chain)."""
    pts = sorted(set(vertices))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _lattice_length(v):
    """Number of lattice steps along ``v`` counted by walking its lattice points."""
    steps = max(abs(x) for x in v)
    count = 0
    for t in range(1, steps + 1):
        # t/steps * v is a lattice point iff every coordinate is integral
        if all((x * t) % steps == 0 for x in v):
            count += 1
    return count


def _translate_pair(a_pts, b_pts):
    shift = tuple(min(p[j] for p in a_pts) for j in range(len(a_pts[0])))
    a = hull_vertices([_sub(p, shift) for p in a_pts]).vertices
    b = hull_vertices([_add(p, shift) for p in b_pts]).vertices
    return tuple(sorted((a, b)))


def polygon_summands_2d(poly, budget: int = DEFAULT_BUDGET,
                        coord_bound: int = DEFAULT_COORD_BOUND) -> DecomposabilityVerdict:
    """Exhaustive lattice Minkowski-summand search for a planar polytope.

    Each edge ``e_k`` of the counter-clockwise boundary is ``len_k * u_k`` with
    ``u_k`` primitive.  A summand up to translation is a choice of sub-lengths
    ``0 <= m_k <= len_k`` with ``sum(m_k * u_k) == 0``, excluding the all-zero
    and all-full choices.  The first ``K - 2`` sub-lengths are enumerated and
    the last two solved for exactly.
    """
    if not isinstance(poly, LatticePolytope):
        poly = hull_vertices(poly)
    if poly.dim != 2:
        raise DimensionMismatch(f"planar search needs dimension 2, got {poly.dim}")
    verts = poly.vertices
    if len(verts) == 1:
        return DecomposabilityVerdict(INDECOMPOSABLE, "single point")
    if max(abs(x) for v in verts for x in v) > coord_bound:
        return DecomposabilityVerdict(UNKNOWN, f"coordinates exceed bound {coord_bound}")

    cycle = _ccw_cycle(verts)
    K = len(cycle)
    edges = [_sub(cycle[(k + 1) % K], cycle[k]) for k in range(K)]
    lengths = [_lattice_length(e) for e in edges]
    units = [tuple(x // l for x in e) for e, l in zip(edges, lengths)]

    if K == 2:
        # a segment: both "edges" are antiparallel, sub-lengths must agree
        if lengths[0] > 1:
            a_pts = [(0, 0), units[0]]
            b_pts = [cycle[0], _add(cycle[0], tuple((lengths[0] - 1) * x for x in units[0]))]
            return _checked(poly, _translate_pair(a_pts, b_pts))
        return DecomposabilityVerdict(INDECOMPOSABLE, "primitive segment (oracle)")

    candidates = 1
    for l in lengths[:-2]:
        candidates *= l + 1
    if candidates > budget:
        return DecomposabilityVerdict(UNKNOWN, f"search budget {budget} exceeded ({candidates} candidates)")

    u1, u2 = units[-2], units[-1]
    det = u1[0] * u2[1] - u1[1] * u2[0]
    for head in itertools.product(*(range(l + 1) for l in lengths[:-2])):
        sx = sum(m * u[0] for m, u in zip(head, units))
        sy = sum(m * u[1] for m, u in zip(head, units))
        # solve a*u1 + b*u2 = -(sx, sy)
        a_num = -sx * u2[1] + sy * u2[0]
        b_num = -u1[0] * sy + u1[1] * sx
        if a_num % det or b_num % det:
            continue
        a, b = a_num // det, b_num // det
        if not (0 <= a <= lengths[-2] and 0 <= b <= lengths[-1]):
            continue
        ms = list(head) + [a, b]
        if all(m == 0 for m in ms) or all(m == l for m, l in zip(ms, lengths)):
            continue
        a_pts, b_pts = [(0, 0)], [cycle[0]]
        for m, l, u in zip(ms, lengths, units):
            a_pts.append(_add(a_pts[-1], (m * u[0], m * u[1])))
            b_pts.append(_add(b_pts[-1], ((l - m) * u[0], (l - m) * u[1])))
        return _checked(poly, _translate_pair(a_pts, b_pts))
    return DecomposabilityVerdict(INDECOMPOSABLE, "no edge splitting (oracle)")


def _checked(poly, pair):
    a, b = pair
    if len(a) < 2 or len(b) < 2 or minkowski_sum(a, b).vertices != poly.vertices:
        raise AssertionError(f"invalid Minkowski witness {pair} for {poly.vertices}")
    return DecomposabilityVerdict(DECOMPOSABLE, "edge splitting (oracle)", pair)


def find_pyramid_apex(vertices):
    """A vertex whose removal leaves a facet-like base missing it, else ``None``."""
    k = affine_dimension(vertices)
    for v in vertices:
        rest = [w for w in vertices if w != v]
        if rest and affine_dimension(rest) == k - 1 and not in_affine_hull(v, rest):
            return v
    return None


def decide_indecomposable(points, budget: int = DEFAULT_BUDGET,
                          coord_bound: int = DEFAULT_COORD_BOUND) -> DecomposabilityVerdict:
    """Best exact verdict available for ``conv(points)``.

    Single points count as indecomposable by convention.
    """
    poly = points if isinstance(points, LatticePolytope) else hull_vertices(points)
    verts = poly.vertices
    if len(verts) == 1:
        return DecomposabilityVerdict(INDECOMPOSABLE, "single point")
    k = affine_dimension(verts)
    if k == 1:
        a, b = verts[0], verts[-1]
        if segment_indecomposable(a, b):
            return DecomposabilityVerdict(INDECOMPOSABLE, "segment-gcd")
        g = gcd_of_vector(_sub(b, a))
        u = tuple(x // g for x in _sub(b, a))
        return DecomposabilityVerdict(DECOMPOSABLE, "segment-gcd", _translate_pair([a, _add(a, u)], [(0,) * len(a), _sub(_sub(b, a), u)]))
    if poly.dim == 2:
        return polygon_summands_2d(poly, budget, coord_bound)
    apex = find_pyramid_apex(verts)
    if apex is not None:
        base = [v for v in verts if v != apex]
        if pyramid_indecomposable(base, apex):
            return DecomposabilityVerdict(INDECOMPOSABLE, "pyramid-gcd")
        return DecomposabilityVerdict(DECOMPOSABLE, "pyramid-gcd")
    return DecomposabilityVerdict(UNKNOWN, "no applicable criterion in dimension >= 3")


# --------------------------------------------------------------------------
# Goldbach condition

HOLDS = "holds"
FAILS = "fails"


def support_of(w) -> frozenset:
    return frozenset(j for j, x in enumerate(w) if x)


@dataclass(frozen=True)
class GoldbachVerdict:
    """Verdict on a supplied witness, with the per-condition breakdown.

    ``conditions`` maps ``"i"``, ``"ii"``, ``"iii"`` to ``holds``/``fails``/``unknown``.
    """

    status: str
    reason: str = ""
    conditions: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS


def _as_condition(verdict: DecomposabilityVerdict) -> str:
    return {INDECOMPOSABLE: HOLDS, DECOMPOSABLE: FAILS}.get(verdict.status, UNKNOWN)


def goldbach_condition_check(P, witness, budget: int = DEFAULT_BUDGET) -> GoldbachVerdict:
    """Check witness points against conditions (i)-(iii) for ``P``.

    (i) conv(witness) indecomposable; (ii) the supports of the witness points
    have empty common intersection; (iii) conv(P and witness) indecomposable.
    All three are always evaluated; any failure makes the verdict ``fails``,
    otherwise any undecided condition makes it ``unknown``.
    """
    poly = P if isinstance(P, LatticePolytope) else hull_vertices(P)
    witness = [tuple(int(x) for x in w) for w in witness]
    if not witness:
        return GoldbachVerdict(FAILS, "empty witness")
    if any(len(w) != poly.dim for w in witness):
        raise DimensionMismatch("witness points must match the polytope dimension")
    if any(x < 0 for w in witness for x in w):
        raise DimensionMismatch("witness points must lie in N^n")

    common = frozenset.intersection(*(support_of(w) for w in witness))
    conditions = {
        "i": _as_condition(decide_indecomposable(witness, budget)),
        "ii": HOLDS if not common else FAILS,
        "iii": _as_condition(decide_indecomposable(list(poly.vertices) + witness, budget)),
    }
    failed = [k for k, v in conditions.items() if v == FAILS]
    if failed:
        reasons = {
            "i": "(i) witness hull is decomposable",
            "ii": f"(ii) supports share coordinates {sorted(j + 1 for j in common)}",
            "iii": "(iii) joint hull is decomposable",
        }
        return GoldbachVerdict(FAILS, "; ".join(reasons[k] for k in failed), conditions)
    if any(v == UNKNOWN for v in conditions.values()):
        return GoldbachVerdict(UNKNOWN, "an indecomposability condition could not be decided", conditions)
    return GoldbachVerdict(HOLDS, "", conditions)
