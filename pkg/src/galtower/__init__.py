"""Specialization-level verification of Galois towers over non-prime finite fields."""

__version__ = "0.1.0"
