"""Exact-arithmetic construction and verification of chiral and regular
polytope generator families inside PSL(3,q)."""

__version__ = "1.0.0"
