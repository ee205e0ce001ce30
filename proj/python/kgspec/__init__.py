"""Spectra and persistent currents of a position-dependent-mass scalar particle
in a spacetime with a space-like dislocation."""

from ._kgspec import *  # noqa: F401,F403
from ._kgspec import __doc__  # noqa: F401
