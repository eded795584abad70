"""Exception hierarchy shared across the package."""


class FanoLatticeError(Exception):
    """Base class for all package errors."""


class PolytopeError(FanoLatticeError, ValueError):
    """Input does not describe a valid Fano lattice polytope.

    ``index`` is the offending vertex position when one is to blame and
    ``line`` the 1-based source line when the input came from text.
    """

    def __init__(self, message, *, index=None, line=None):
        self.message = message
        self.index = index
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)

    def at_line(self, line):
        """Same error type, tagged with a source line."""
        return type(self)(self.message, index=self.index, line=line)


class DimensionMismatchError(PolytopeError):
    pass


class NonPrimitiveVertexError(PolytopeError):
    pass


class DuplicateVertexError(PolytopeError):
    pass


class DegeneratePolytopeError(PolytopeError):
    """The points do not affinely span the ambient space."""


class OriginNotInteriorError(PolytopeError):
    pass


class NotAVertexError(PolytopeError):
    """A listed point lies in the convex hull of the others."""


class NotSimplicialError(FanoLatticeError, ValueError):
    pass


class NotSmoothError(FanoLatticeError, ValueError):
    pass


class InvariantViolation(FanoLatticeError, RuntimeError):
    """A statement that must hold for every valid input was found false.

    Raised with the offending polytope attached so the counterexample is
    never lost.
    """

    def __init__(self, message, polytope=None):
        super().__init__(message)
        self.polytope = polytope


class SearchBudgetExceeded(FanoLatticeError, RuntimeError):
    pass


class ClassificationUnavailable(FanoLatticeError, LookupError):
    """No enumeration or database is available for the requested dimension."""


class ParseError(PolytopeError):
    """Malformed polytope text (bad header, wrong row count, non-integers)."""
