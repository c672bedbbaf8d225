"""Exact computation with Witt-vector Weyl algebras and their symbol algebras."""

__version__ = "0.1.0"
