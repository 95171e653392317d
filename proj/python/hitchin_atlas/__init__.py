"""Exact stratification tables and germ/metric verification for sl(2)-type
symplectic Hitchin fibres.

Everything lives in the compiled extension; this package re-exports it.
Container attributes on the bound structs (for example ``BasePoint.zeros``)
convert to and from Python by value, so build the full list first and assign
it rather than appending in place.
"""

from ._core import *  # noqa: F401,F403
from ._core import version

__version__ = version()
