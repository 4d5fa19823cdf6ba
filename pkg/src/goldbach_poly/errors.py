"""Exception hierarchy shared by every module.

Everything a caller can reasonably recover from derives from
:class:`GoldbachError`; the CLI maps those to exit code 1.
"""


class GoldbachError(Exception):
    """Base class for domain errors."""


# poly-core
class FieldError(GoldbachError, ValueError):
    pass


class FieldMismatch(GoldbachError, ValueError):
    pass


class ArityMismatch(GoldbachError, ValueError):
    pass


class UnknownVariable(GoldbachError, ValueError):
    pass


class PolynomialSyntaxError(GoldbachError, ValueError):
    """Raised by the expression parser; carries the offending column."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        pointer = ""
        if text:
            pointer = "\n  " + text + "\n  " + " " * position + "^"
        super().__init__(f"{message} at position {position}{pointer}")


class PolyDivisionByZero(GoldbachError, ZeroDivisionError):
    pass


class PivotOutOfRange(GoldbachError, IndexError):
    pass


class ReplacementUsesPivot(GoldbachError, ValueError):
    pass


class NotAffine(GoldbachError, ValueError):
    pass


# lattice-geom
class DimensionMismatch(GoldbachError, ValueError):
    pass


class DegenerateSegment(GoldbachError, ValueError):
    pass


class ApexInBaseHyperplane(GoldbachError, ValueError):
    pass


# goldbach-engine
class ZeroExponent(GoldbachError, ValueError):
    pass


class ArityTooSmall(GoldbachError, ValueError):
    pass


class WitnessRejected(GoldbachError, ValueError):
    pass


class DenominatorNotInSystem(GoldbachError, ValueError):
    pass


class DocumentError(GoldbachError, ValueError):
    """Malformed decomposition document."""


# irreducibility-oracle
class BudgetExceeded(GoldbachError, RuntimeError):
    pass


class NotApplicable(GoldbachError, ValueError):
    pass


# localization-lab
class EmptyInterval(GoldbachError, ValueError):
    pass


class NotInSystem(GoldbachError, ValueError):
    pass


class ToleranceNotReached(GoldbachError, RuntimeError):
    def __init__(self, message, series=None):
        super().__init__(message)
        self.series = series


# forcing-algebra
class PivotCoefficientZero(GoldbachError, ValueError):
    pass


class UnsupportedArity(GoldbachError, ValueError):
    pass
