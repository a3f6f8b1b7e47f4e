"""Monte Carlo volume of separable bipartite quantum states."""

from ._core import *  # noqa: F401,F403
from ._core import DomainError, Frame, Unsupported  # noqa: F401

__version__ = "0.1.0"
