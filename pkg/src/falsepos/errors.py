"""Exception types shared across the package.

Argument and precondition failures are ``ValueError`` subclasses; numeric
failures (conditioning on a null event, a quadrature that would not
converge) are ``ArithmeticError`` subclasses. The CLI maps the first family
to exit code 2 and the second to exit code 3.
"""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateError(ArithmeticError):
    """The requested quantity is undefined, e.g. conditioning on a zero-mass event."""


class QuadratureError(ArithmeticError):
    """Adaptive integration failed to reach the requested tolerance."""
