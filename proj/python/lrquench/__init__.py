"""Python bindings for the lrquench simulator."""

from ._lrquench import *  # noqa: F401,F403
from ._lrquench import __version__  # noqa: F401
