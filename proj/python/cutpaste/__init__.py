"""Python access to the cutpaste channel library."""

from ._core import *  # noqa: F401,F403
from ._core import CutPasteError, __version__  # noqa: F401
