"""Exact Gamma-equivariant homological algebra for finite groups and finite-dimensional algebras."""

__version__ = "0.1.0"
