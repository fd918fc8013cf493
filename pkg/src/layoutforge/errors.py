"""Exception types shared across the package."""

from __future__ import annotations


class LayoutForgeError(Exception):
    """Base class for all package-specific errors."""


class SchemaError(LayoutForgeError):
    """A document failed structural validation.

    ``path`` locates the offending field, e.g. ``walls[2].a``.
    """

    def __init__(self, message: str, path: str = "") -> None:
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class EmptyRegionError(LayoutForgeError):
    """Grid sampling produced no vertices for a required region."""


class OptimizationError(LayoutForgeError):
    """An optimization run diverged or produced non-finite values."""


class JobCancelled(LayoutForgeError):
    """A background job was cancelled before completion."""
