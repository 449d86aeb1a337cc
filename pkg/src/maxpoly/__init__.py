"""Maximal volumes of unit-diameter polytopes with few vertices."""

from .errors import DegenerateHullError, DomainError, MaxPolyError, SearchError

__version__ = "0.1.0"

__all__ = ["DegenerateHullError", "DomainError", "MaxPolyError", "SearchError", "__version__"]
