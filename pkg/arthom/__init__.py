"""Exact homological computations for bound quiver algebras"""

__version__ = "1.0.0"
