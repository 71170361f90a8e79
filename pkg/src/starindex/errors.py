"""Exception hierarchy.

Every error carries the CLI exit code of its class, so the command-line
surface maps failures to exit statuses without a lookup table.
"""


class StarIndexError(Exception):
    exit_code = 1


class InputError(StarIndexError, ValueError):
    """Unreadable or malformed input file or argument."""

    exit_code = 1


class InvalidEpsilon(InputError):
    pass


class EmptyEpsList(InputError):
    pass


class GeometryError(StarIndexError, ValueError):
    exit_code = 2


class TooFewVertices(GeometryError):
    pass


class SelfIntersecting(GeometryError):
    pass


class DegenerateArea(GeometryError):
    pass


class NotConvex(GeometryError):
    pass


class InputOutsideS(GeometryError):
    """A self-map was evaluated at a point outside its set."""


class NotStarShaped(StarIndexError):
    exit_code = 3


class NotStarCenter(NotStarShaped):
    pass


class CenterNotInteriorKernel(NotStarShaped):
    pass


class DegenerateKernel(NotStarShaped):
    pass


class ZeroIndex(StarIndexError):
    exit_code = 4


class SolverError(StarIndexError):
    exit_code = 5


class RangeEscape(SolverError):
    """The map handed to the fixed-point solver left its domain."""


class SolverBudget(SolverError):
    pass


class NumericallyIdentity(SolverError):
    pass
