"""Exact-arithmetic laboratory for modular forms, quaternions, elliptic curves and combinatorics."""

__version__ = "0.3.0"
