"""Exact engine for the elliptic Hall algebra acting on the Fock space."""

__version__ = "0.1.0"
