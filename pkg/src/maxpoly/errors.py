"""Exception types shared across the package."""


class MaxPolyError(Exception):
    """Base class for all package errors."""


class DomainError(MaxPolyError, ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateHullError(MaxPolyError, ValueError):
    """Input points are collinear (2D) or coplanar (3D)."""


class SearchError(MaxPolyError, RuntimeError):
    """A numerical routine failed in a way that should not happen."""
