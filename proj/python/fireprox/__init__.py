"""Proximity-aware fire hazard risk engine."""

from ._core import *  # noqa: F401,F403
from ._core import FireproxError, __doc__  # noqa: F401
