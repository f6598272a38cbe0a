"""Exception hierarchy shared by every module.

The CLI maps any :class:`TwistlabError` to exit code 2.
"""


class TwistlabError(Exception):
    """Base class for input and precondition failures."""


class DimensionError(TwistlabError):
    """Operands live on surfaces of different genus or have the wrong shape."""


class DomainError(TwistlabError):
    """A numeric argument lies outside the range where a formula applies."""


class PreconditionError(TwistlabError):
    """A stated hypothesis of an operation does not hold for the input."""


class UnsupportedInput(TwistlabError):
    """The input is well formed but outside what the library decides."""


class ParseError(TwistlabError):
    """Malformed serialized word, scenario or knot table."""


class AtlasError(TwistlabError):
    """Missing, inconsistent or unresolvable curve or intersection data."""
