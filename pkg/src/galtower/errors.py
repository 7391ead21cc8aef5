"""Exception hierarchy shared by all modules."""


class GaltowerError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(GaltowerError, ValueError):
    pass


class SizeCapExceeded(GaltowerError):
    pass


class FieldMismatch(GaltowerError, TypeError):
    pass


class DivisionByZero(GaltowerError, ZeroDivisionError):
    pass


class IncompatibleFields(GaltowerError, ValueError):
    pass


class HostTooSmall(GaltowerError, ValueError):
    """The host field does not contain F_q."""


class BaseMismatch(GaltowerError, ValueError):
    """Two linearized polynomials use different linearity bases q."""


class NotSeparable(GaltowerError, ValueError):
    pass


class NotSeparableOrZeroLead(NotSeparable):
    pass


class CapExceeded(GaltowerError):
    """A search bound was hit; this is not a mathematical failure."""


class BadParameters(GaltowerError, ValueError):
    pass


class GcdNotOne(BadParameters):
    pass


class BadRange(BadParameters):
    pass


class ZeroArgument(GaltowerError, ValueError):
    pass


class NotOnCurve(GaltowerError, ValueError):
    pass


class DegenerateZ(GaltowerError, ValueError):
    pass


class PoleHit(GaltowerError, ArithmeticError):
    """A denominator vanished: the specialization sits over z = 0 or z = infinity."""


class PrecondViolated(GaltowerError, ValueError):
    pass


class SplittingTooSmall(GaltowerError):
    pass


class BudgetExceeded(GaltowerError):
    pass


class BadLevel(GaltowerError, ValueError):
    pass


class NoAdmissibleK(GaltowerError, ValueError):
    pass
