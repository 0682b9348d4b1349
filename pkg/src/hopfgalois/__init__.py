"""Exact verification kernel for finite-dimensional Hopf algebras and cleft Hopf–Galois extensions."""

__version__ = "0.1.0"
