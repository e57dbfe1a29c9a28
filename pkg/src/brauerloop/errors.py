"""Exception types shared across the package."""


class DivisionError(ArithmeticError):
    """An exact polynomial division left a nonzero remainder."""


class PoleError(ZeroDivisionError):
    """A rational function was evaluated where its denominator vanishes."""


class NonGenericError(ValueError):
    """Superdiagonal data does not pair up into a link pattern."""


class IdentityViolation(AssertionError):
    """A verified identity failed; the message names the identity and the witness."""
