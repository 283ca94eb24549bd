"""Witt groups of G-equivariant quadratic forms over GF(2^e)."""

__version__ = "0.1.0"
