"""Combinatorial workbench: minimal-cut lattices, partial cyclic orders,
exact Coxeter group complexes and Garside normal forms, with brute-force
oracles small enough to check everything at desk scale."""

__version__ = "0.1.0"
