"""Exact abeliant calculus, Segre/Jacobi matrices, and an elementary Jacobian."""

__version__ = "0.1.0"
