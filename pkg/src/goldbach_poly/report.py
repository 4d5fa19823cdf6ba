"""Session-style text rendering of a decomposition."""

from __future__ import annotations

from .engine import Decomposition, DecompositionMode
from .geometry import format_matrix
from .polynomial import Polynomial, format_monomial


def _braced(items) -> str:
    return "{" + ", ".join(items) + "}"


def session_text(d: Decomposition) -> str:
    """Text block laid out like an interactive algebra session.

    Lists the monomials, the exponent matrix, the chosen w points, the
    companion polynomials and the main summands.
    """
    H = d.input
    vars = H.vars
    n = len(vars)
    blocks = []
    shown = str(H)
    monomials = [format_monomial(e, vars) or "1" for e, _ in H.sorted_terms()]
    blocks += [f"The monomials of\n\n{shown}\n\nare\n\n{_braced(monomials)}"]
    exps = [e for e, _ in H.sorted_terms()] or [(0,) * n]
    blocks += [f"The exponent set of\n\n{shown}\n\nis\n\n{format_matrix(exps)}"]

    w_rows, w_monos, companions, mains = [], [], [], []
    unit = tuple(int(k == 0) for k in range(n))
    for piece in d.pieces:
        first, *rest = piece.summands
        mains.append(str(first[0]))
        if rest:
            companions.append(str(-rest[0][0]))
        if piece.choice is not None:
            w_rows.append(piece.choice.w)
            w_monos.append(format_monomial(piece.choice.w, vars))
        elif not any(piece.monomial) and d.mode is not DecompositionMode.LOCALIZATION:
            w_rows.append(unit)
            w_monos.append(format_monomial(unit, vars))
    if w_rows:
        blocks.append(f"The w points are\n\n{format_matrix(w_rows)}")
        blocks.append(f"The corresponding monomials given by the w points are\n\n{_braced(w_monos)}")
    blocks.append(f"The corresponding absolutely irreducible polynomials are\n\n{_braced(companions)}")
    blocks.append(f"and also\n\n{_braced(mains)}")
    return "\n\n".join(blocks) + "\n"


def fractions_text(pairs) -> str:
    return "\n".join(f"({s}) / ({W})" for s, W in pairs) + "\n"


def polynomial_list(polys) -> str:
    return _braced(str(p) if isinstance(p, Polynomial) else p for p in polys)
