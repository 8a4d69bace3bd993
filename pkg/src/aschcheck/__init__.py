"""Character-theoretic recognition of Aschbacher classes C2, C5 and C8 for matrix groups over finite fields."""

from __future__ import annotations

from .errors import AschError
from .finite_field import GF, make_field
from .groups import MatRep, close_group
from .matrices import Matrix

__version__ = "0.1.0"

__all__ = ["AschError", "GF", "MatRep", "Matrix", "close_group", "make_field", "__version__"]
