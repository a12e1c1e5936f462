"""Distributive unimodal logic: frames, algebras, axioms and exhaustive checks."""

__version__ = "0.1.0"
