"""Exception hierarchy shared by every aglmobius module.

Each exception carries the CLI exit code it maps to: 1 for usage and
validation problems, 2 for domain errors, 3 for I/O.
"""


class AglMobiusError(Exception):
    exit_code = 2


class UsageError(AglMobiusError, ValueError):
    exit_code = 1


class DomainError(AglMobiusError, ValueError):
    exit_code = 2


class CacheIOError(AglMobiusError, OSError):
    exit_code = 3


# Usage / validation

class NotPrime(UsageError):
    pass


class NotPrimePower(UsageError):
    pass


class ParseError(UsageError):
    pass


class SizeCap(UsageError):
    pass


# Domain

class FieldMismatch(DomainError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class ZeroElement(DomainError):
    pass


class NotDivisor(DomainError):
    pass


class CharDividesD(DomainError):
    pass


class NotContained(DomainError):
    pass


class NotModule(DomainError):
    pass


class NonIntegralDim(DomainError):
    pass


class FullGroup(DomainError):
    pass


class NotLattice(DomainError):
    pass


class NotCrosscut(DomainError):
    pass


class NotPartialOrder(DomainError):
    pass


class KOutOfRange(DomainError):
    pass


class InvalidOrder(DomainError):
    pass
