"""Exact combinatorics of type B Hecke algebras realized on finite symplectic flag data."""

__version__ = "0.1.0"
