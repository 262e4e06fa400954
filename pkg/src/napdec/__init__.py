"""Exact verification toolkit for four-piece paradoxical decompositions of
non-Archimedean normed spaces ``(K^n, ||.||)``."""

__version__ = "0.1.0"
