"""Exact structure-constant computations for Hopf heaps, trusses and Rota-Baxter operators."""

__version__ = "0.1.0"
