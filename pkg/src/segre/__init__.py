"""Exact Segre-invariant arithmetic for vector bundles on curves."""

from .errors import DomainError, GuardError, SegreError, SegreOverflowError

__version__ = "0.1.0"

__all__ = ["DomainError", "GuardError", "SegreError", "SegreOverflowError", "__version__"]
