"""Open-system dynamics of qubits near lossy and gain media."""

from ._lindgain import *  # noqa: F401,F403
from ._lindgain import __doc__  # noqa: F401

__version__ = "0.1.0"
