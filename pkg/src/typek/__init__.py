"""Exact lattice, discriminant-form and period computations for type-K Calabi-Yau threefolds."""

__version__ = "0.1.0"
