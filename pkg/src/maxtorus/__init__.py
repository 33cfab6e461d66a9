"""Exact toric/torus-action combinatorics and numeric transverse-Kahler checks."""

__version__ = "0.1.0"
