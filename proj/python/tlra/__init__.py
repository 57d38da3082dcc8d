"""Taxicab log-ratio analysis of aggregated compositional tables."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
