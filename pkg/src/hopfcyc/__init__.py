"""Exact computer algebra for Hopf-cyclic cohomology of bicrossed product Hopf algebras."""

from fractions import Fraction

__all__ = ["Fraction"]
__version__ = "0.1.0"
