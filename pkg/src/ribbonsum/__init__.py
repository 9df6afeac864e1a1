"""Exact state sums for framed ribbon graphs."""
from ._snf_backend import BACKEND

__all__ = ["BACKEND"]
__version__ = "0.1.0"
