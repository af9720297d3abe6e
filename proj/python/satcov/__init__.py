"""Coverage analysis for clustered LEO satellite downlinks."""

from ._satcov import *  # noqa: F401,F403
from ._satcov import __doc__  # noqa: F401

__version__ = "0.1.0"
