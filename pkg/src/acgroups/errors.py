"""Exception hierarchy shared by all acgroups modules."""


class ACGroupsError(Exception):
    """Base class for every error raised by this package."""


class ParseError(ACGroupsError):
    """A group-spec string or data file could not be parsed."""


class InvalidParameter(ACGroupsError):
    """A constructor parameter is outside its documented range."""


class OrderCapExceeded(ACGroupsError):
    """A construction or search would exceed the configured order cap."""


class InvalidTable(ACGroupsError):
    """A multiplication table fails the group axioms."""


class IndexOutOfRange(ACGroupsError, IndexError):
    """An element index is not in {0..n-1}."""


class NotNormal(ACGroupsError):
    """Quotient requested by a non-normal subgroup."""


class AbelianGroup(ACGroupsError):
    """The non-commuting graph is only defined for non-abelian groups."""


class NotACGroup(ACGroupsError):
    """The operation requires every non-central centralizer to be abelian."""


class NotSolvable(ACGroupsError):
    """The operation requires a solvable group."""


class NotNilpotent(ACGroupsError):
    """The operation requires a nilpotent group."""


class NotPGroup(ACGroupsError):
    """The operation requires a group of prime-power order."""


class MultipleNonAbelianSylows(ACGroupsError):
    """Internal consistency failure: an AC-group cannot have two non-abelian
    Sylow subgroups."""


class TooLarge(ACGroupsError):
    """Input exceeds the fixed size limit of an exact brute-force routine."""


class InvalidTuple(ACGroupsError):
    """A constraint tuple violates its structural invariants."""


class NotFeasible(ACGroupsError):
    """Claim verification requested for an infeasible tuple."""


class BoundsTooLarge(ACGroupsError):
    """An enumeration request exceeds the configured search budget."""


class TheoremViolation(ACGroupsError):
    """A catalog pair contradicts one of the verified theorems (build-failing)."""
