"""Exception types used across the package."""


class QopersError(Exception):
    """Base class for all package errors."""


class InputError(QopersError):
    """Malformed or inconsistent problem data."""


class ShapeError(QopersError):
    """Matrix shapes not conformable."""


class PoleSamplingError(QopersError):
    """Could not find evaluation points away from poles."""


class ResonanceError(QopersError):
    """Twist ratio lies on the q-lattice; linear difference solve is singular."""


class DegenerateError(QopersError):
    """Data violates a nondegeneracy requirement."""


class ConvergenceError(QopersError):
    """Iterative solver failed to converge."""
