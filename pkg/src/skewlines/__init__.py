"""Discrete invariants, switching clusters and Jones-type polynomials of skew-line configurations."""

__version__ = "0.1.0"
