"""Exact combinatorics of complete fans, hyperbolic domains and their gluings."""

__version__ = "0.1.0"
