"""Stationary states of a two-level atom in a quantized two-mode field in free space."""

__version__ = "0.1.0"

from .operators import SystemParams  # noqa: E402
from .hilbert import make_space  # noqa: E402

__all__ = ["SystemParams", "make_space", "__version__"]
