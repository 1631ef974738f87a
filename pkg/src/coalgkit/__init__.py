"""Finite-state workbench for monads, coalgebras and modal logics."""

__version__ = "0.1.0"
