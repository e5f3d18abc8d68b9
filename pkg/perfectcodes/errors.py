"""
All errors used/raised by the library.
"""


class PerfectCodesError(Exception):
    """Base class for every error raised by perfectcodes."""


class EnumerationCapExceeded(PerfectCodesError):
    """An error raised when a group closure grows past the configured element cap."""


class NotASubgroup(PerfectCodesError):
    """An error raised when a group is not contained in the group it should be a subgroup of."""


class ElementNotInGroup(PerfectCodesError):
    """An error raised when a permutation is not an element of the given group."""


class DomainNotInvariant(PerfectCodesError):
    """An error raised when a point set is not preserved by every generator of a group."""


class NotPrime(PerfectCodesError):
    """An error raised when a field characteristic is not a prime."""


class FieldTooLarge(PerfectCodesError):
    """An error raised when a field would exceed the configured size cap."""


class DivisionByZero(PerfectCodesError, ZeroDivisionError):
    """An error raised when inverting the zero element of a field."""


class InvalidConnectionSet(PerfectCodesError):
    """
    An error raised when a connection set is not inverse-closed, contains the identity, or
    meets the subgroup it is meant to avoid.
    """


class TooManyDoubleCosetClasses(PerfectCodesError):
    """An error raised when a connection-set search would enumerate more subsets than allowed."""


class HypothesisNotMet(PerfectCodesError):
    """
    An error raised when a procedure that is only valid while H is a perfect code of G is
    asked about an instance where it is not.
    """


class ConsistencyViolation(PerfectCodesError):
    """An error raised when two decision paths that must agree produce different answers."""


class ParameterOutOfRange(PerfectCodesError):
    """An error raised when a family parameter is outside its supported range."""


class InvalidInput(PerfectCodesError):
    """An error raised when an argument does not have the shape an operation requires."""


class PreconditionViolated(PerfectCodesError):
    """An error raised when a named precondition of a construction does not hold."""

    def __init__(self, precondition: str, detail: str = ""):
        self.precondition = precondition
        self.detail = detail
        super().__init__(f"{precondition}: {detail}" if detail else precondition)


class ParseError(PerfectCodesError, ValueError):
    """An error raised when textual input (cycles, group specs, arguments) cannot be parsed."""


class BudgetExceeded(PerfectCodesError):
    """An error raised inside searches when the node budget runs out."""

    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"search budget exhausted after {nodes} nodes")
