"""Induced poset saturation in the Boolean lattice: exact search, proof audits, bounds."""

__version__ = "0.1.0"
