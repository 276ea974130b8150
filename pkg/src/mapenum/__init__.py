"""Exact enumeration of maps: permutation encoding, brute-force oracle, planar solution."""

__version__ = "0.1.0"
