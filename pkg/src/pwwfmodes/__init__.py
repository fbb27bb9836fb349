"""Pairwise well-formed words, modes and their transformations."""

__version__ = "0.1.0"
