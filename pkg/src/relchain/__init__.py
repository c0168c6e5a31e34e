"""Exact chain-level homological algebra over truncated Witt rings.

Everything here is integer or p-adic-residue arithmetic; no floating point
enters any computation.
"""

__version__ = "0.1.0"
