"""Exception hierarchy shared by the engines and the CLI."""


class QGraphError(Exception):
    """Base class for all package errors."""

    exit_code = 4


class InputError(QGraphError, ValueError):
    """Malformed input: parse failures, schema violations, bad arguments."""

    exit_code = 2


class DomainError(QGraphError, ValueError):
    """Input is well formed but outside the domain of the operation."""

    exit_code = 3


class ZeroCouplingError(DomainError):
    """alpha = 0: the lattice spectrum is the whole half-line [0, inf)."""

    def __init__(self, msg=None):
        super().__init__(
            msg
            or "alpha = 0 is excluded: with a vanishing delta coupling the "
            "spectrum is trivial, sigma(H) = [0, inf), so there are no gaps "
            "to analyse"
        )


class RationalThetaError(DomainError):
    """The operation needs an irrational ratio but got a rational one."""


class EnclosureTooWideError(QGraphError, ArithmeticError):
    """An enclosure cannot certify the requested quantity."""


class BoundaryUndecidedError(QGraphError, ArithmeticError):
    """A comparison falls inside an enclosure and cannot be decided."""


class CouplingResonanceError(QGraphError, ArithmeticError):
    """I + TT* - S/(ik) is singular; signals corrupted coupling data."""


class NumericalFailure(QGraphError, ArithmeticError):
    """An internal consistency check on floating-point results failed."""
