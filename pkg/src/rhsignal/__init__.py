"""Hermite and Laguerre function expansions, fractional transforms and residue-class filters."""
from .exceptions import BasisMismatchError, DomainError, InsufficientGridError, ParseError
from .specfun import *  # noqa: F401,F403
from .line_basis import *  # noqa: F401,F403
from .line_operators import *  # noqa: F401,F403
from .line_transforms import *  # noqa: F401,F403
from .halfline import *  # noqa: F401,F403
from .io import *  # noqa: F401,F403
from .estimators import *  # noqa: F401,F403
from . import specfun, line_basis, line_operators, line_transforms, halfline, io, estimators

__version__ = "0.1.0"

__all__ = (
    ["BasisMismatchError", "DomainError", "InsufficientGridError", "ParseError", "__version__"]
    + specfun.__all__ + line_basis.__all__ + line_operators.__all__
    + line_transforms.__all__ + halfline.__all__ + io.__all__ + estimators.__all__
)
