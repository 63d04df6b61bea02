"""Bending flows, fiber classification and Gel'fand-Cetlin checks for polygon spaces."""

from ._polybend import *  # noqa: F401,F403
from ._polybend import PolybendError, __version__  # noqa: F401
