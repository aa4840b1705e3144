"""Age-of-information toolkit for the two-user broadcast erasure channel.

Thin re-export of the compiled core; see the README for the library surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
