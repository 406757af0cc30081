"""Toric ideals of graph homomorphisms."""

__version__ = "0.1.0"
