"""Exact Fourier expansions of symmetric Hermitian modular forms over Q(i)."""

__version__ = "0.1.0"
