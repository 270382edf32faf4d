"""Exception types shared across the package."""


class OalabError(Exception):
    """Base class for every error raised by this package."""


class DuplicateLabel(OalabError):
    pass


class UnknownLabel(OalabError):
    pass


class AxiomViolation(OalabError):
    """A partial-sum table failed validation.

    Carries the full list of violations, each a (axiom, witness, detail)
    triple with the witness given in input labels.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        lines = ", ".join(
            f"{v.axiom}@({','.join(v.witness)})" for v in self.violations[:8]
        )
        more = "" if len(self.violations) <= 8 else f" (+{len(self.violations) - 8} more)"
        super().__init__(f"{len(self.violations)} axiom violation(s): {lines}{more}")


class NotComparable(OalabError):
    pass


class DomainMismatch(OalabError):
    pass


class InternalInconsistency(OalabError):
    """Two supposedly equivalent computations disagreed; implementation bug."""


class NotAnEvent(OalabError):
    pass


class NotAlgebraic(OalabError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"test space is not algebraic: {witness}")


class PerspectivityNotTransitive(InternalInconsistency):
    pass


class RoundTripFailure(OalabError):
    pass


class OutOfRange(OalabError):
    pass


class SizeMismatch(OalabError):
    pass


class NotClosedMember(OalabError):
    pass


class OpenFamilyTooLarge(OalabError):
    pass


class NotInCarrier(OalabError):
    pass


class NotAProjection(OalabError):
    pass


class DimensionMismatch(OalabError):
    pass


class NotOrthogonal(OalabError):
    pass


class IllConditioned(OalabError):
    pass


class ThetaOutOfRange(OalabError):
    pass


class NotDominated(OalabError):
    pass


class NotUnit(OalabError):
    pass


class ParseError(OalabError):
    """Malformed input file; maps to CLI usage exit code."""
