"""Exception hierarchy.

Budget overruns and failed verifications get their own branches because the
CLI maps them to distinct exit codes.
"""


class B0Error(Exception):
    """Base class for every error raised by b0kit."""


class BudgetExceeded(B0Error):
    """A computation would exceed its configured size budget."""


class VerificationFailed(B0Error):
    """A constructed certificate did not pass its own checks."""


# finite-field
class NonPrime(B0Error, ValueError):
    pass


class DegreeOutOfRange(B0Error, ValueError):
    pass


class OrderTooLarge(BudgetExceeded, ValueError):
    pass


class DivisionByZero(B0Error, ZeroDivisionError):
    pass


class FieldMismatch(B0Error, ValueError):
    pass


class NotDividing(B0Error, ValueError):
    pass


class EvenCharacteristic(B0Error, ValueError):
    pass


# group-core
class OrderExceeded(BudgetExceeded):
    pass


class NonInvertibleGenerator(B0Error, ValueError):
    pass


class SearchBudgetExceeded(BudgetExceeded):
    pass


class InvalidGroup(B0Error, ValueError):
    pass


# matrix-groups
class Singular(B0Error, ValueError):
    pass


class DimensionMismatch(B0Error, ValueError):
    pass


class NotPrimePower(B0Error, ValueError):
    pass


# witness
class RootUnavailable(B0Error, ValueError):
    pass


class DivisibilityViolated(B0Error, ValueError):
    pass


class ConstructionFailed(VerificationFailed):
    pass


# cohomology / wedge / h1-sigma
class TooLarge(BudgetExceeded):
    pass


class NotASubgroup(B0Error, ValueError):
    pass


class InvalidAction(B0Error, ValueError):
    pass


class NotApplicable(B0Error, ValueError):
    pass


# cli-catalog
class NotExceptional(B0Error, ValueError):
    pass


class UnknownName(B0Error, KeyError):
    pass


class BadParams(B0Error, ValueError):
    pass
