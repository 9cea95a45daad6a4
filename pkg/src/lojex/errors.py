"""Exception types shared across the engine.

Input-shaped problems derive from InputError (CLI exit code 3), resource or
precision exhaustion from BudgetError (exit code 4); anything else escaping
is an internal error (exit code 5).
"""


class LojexError(Exception):
    """Base class for all engine errors."""


class InputError(LojexError):
    """Malformed or out-of-contract input."""


class BudgetError(LojexError):
    """A bounded search or precision budget was exhausted."""


class DivisionByZero(InputError):
    pass


class FieldMismatch(InputError):
    pass


class ReduciblePolynomial(InputError):
    """Raised by adjoin_root; carries a witness factor when one was found."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class RootSearchUnsupported(InputError):
    """Complete root finding is not available over this field at this degree."""


class CharacteristicError(InputError):
    pass


class ZeroInput(InputError):
    pass


class ArityMismatch(InputError):
    pass


class UndeterminedOrder(BudgetError):
    """Order still hidden beyond the precision cap and no certificate applies."""

    def __init__(self, message, precision):
        super().__init__(message)
        self.precision = precision


class ValueMismatch(InputError):
    pass


class NotAUnit(InputError):
    pass


class NotCentered(InputError):
    pass


class Terminated(InputError):
    pass


class SeparationNotReached(BudgetError):
    def __init__(self, message, max_steps, progression):
        super().__init__(message)
        self.max_steps = max_steps
        self.progression = progression


class HypothesisViolated(InputError):
    pass


class PointSearchExhausted(BudgetError):
    pass


class RootNotRepresentable(InputError):
    """A branch needs a field extension this coefficient field cannot express."""

    def __init__(self, message, polynomial=None):
        super().__init__(message)
        self.polynomial = polynomial


class PrecisionExhausted(BudgetError):
    pass


class Undecidable(BudgetError):
    def __init__(self, message, verified_precision):
        super().__init__(message)
        self.verified_precision = verified_precision


class MalformedCertificate(InputError):
    pass


class NotMonomial(InputError):
    pass


class NotPrimary(BudgetError):
    def __init__(self, message, k_max):
        super().__init__(message)
        self.k_max = k_max


class BoundTooSmall(BudgetError):
    def __init__(self, message, trend):
        super().__init__(message)
        self.trend = trend


class ExprSyntaxError(InputError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariable(InputError):
    pass


class NonNaturalExponent(InputError):
    pass
