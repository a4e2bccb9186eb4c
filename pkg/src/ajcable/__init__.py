"""Colored Jones sequences of twist knots and their (r,2)-cables, recurrence
guessing in the quantum torus, and A-polynomial checks of the AJ identity."""

__version__ = "0.1.0"
