"""Exception hierarchy shared across the library."""


class HoloposError(Exception):
    """Base class for all library-specific errors."""


class DomainError(HoloposError, ArithmeticError):
    """An operation was applied outside its mathematical domain
    (division by an enclosure of zero, logarithm across the branch cut, ...)."""


class BranchCutError(DomainError):
    """An evaluation point's enclosure straddles the active branch cut."""


class PrecisionExhausted(HoloposError):
    """The adaptive precision loop hit the hard cap without meeting the target."""


class ParseError(HoloposError, ValueError):
    """Malformed operator / input file."""

    def __init__(self, message, location=None):
        super().__init__(message if location is None else f"{message} (at {location})")
        self.location = location


class LeadingZeroError(HoloposError):
    """The leading recurrence coefficient vanishes at an index that must be solved for."""

    def __init__(self, index):
        super().__init__(f"leading coefficient vanishes at n={index}")
        self.index = index


class IrregularError(HoloposError):
    """The point is an irregular singular point (Fuchs criterion fails)."""


class RadiusError(HoloposError):
    """The requested disk radius violates the majorant-method precondition."""


class PlanningError(HoloposError):
    """No admissible analytic-continuation path could be constructed."""


class ShapeError(HoloposError):
    """The singular expansion does not have the shape the transfer step supports."""


class CoverageError(HoloposError):
    """A rectangle covering fails to cover the arc or touches a singular point."""


class UnsupportedStructure(HoloposError):
    """The input falls outside the class of problems the prover handles;
    the pipeline reports an inconclusive verdict with this reason."""


class Inconclusive(HoloposError):
    """No crossover index could be certified within the search bounds."""
