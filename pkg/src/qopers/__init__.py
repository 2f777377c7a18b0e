"""q-opers, QQ-systems, q-Wronskians and toroidal Bethe equations over an
arbitrary-precision complex rational-function field."""

from .context import Context, DEFAULT_CONTEXT
from .errors import (
    ConvergenceError,
    DegenerateError,
    InputError,
    PoleSamplingError,
    QopersError,
    ResonanceError,
    ShapeError,
)
from .ratfield import (
    Poly,
    RatFunc,
    RFMatrix,
    identity_test,
    poly_from_roots,
    q_shift,
    rat_reduce,
    rf_det,
    rf_matmul,
    rf_minor,
)

__all__ = [
    "Context",
    "DEFAULT_CONTEXT",
    "Poly",
    "RatFunc",
    "RFMatrix",
    "identity_test",
    "poly_from_roots",
    "q_shift",
    "rat_reduce",
    "rf_det",
    "rf_matmul",
    "rf_minor",
    "QopersError",
    "InputError",
    "ShapeError",
    "PoleSamplingError",
    "ResonanceError",
    "DegenerateError",
    "ConvergenceError",
]

__version__ = "0.1.0"
