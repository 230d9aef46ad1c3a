"""Finite solvable group engine and the composition-length witness atlas."""

from .errors import GroupError
from .grp import GroupHandle, SeriesReport, derived_series, factorize, omega

__all__ = ["GroupError", "GroupHandle", "SeriesReport", "derived_series",
           "factorize", "omega"]
__version__ = "0.1.0"
