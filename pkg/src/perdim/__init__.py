"""Exact homological invariants of bound quiver algebras."""

__version__ = "0.1.0"
