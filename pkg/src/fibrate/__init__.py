"""Great circle and great 3-sphere fibrations: exterior algebra on R^4,
orthogonal complex and quaternionic structures, and verification suites."""

from .errors import FibrateError

__version__ = "0.1.0"

__all__ = ["FibrateError", "__version__"]
