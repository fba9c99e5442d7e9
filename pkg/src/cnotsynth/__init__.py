"""Synthesis of linear reversible (CNOT-only) circuits.

Reduces row-by-row triangular synthesis to (weighted) syndrome decoding,
for all-to-all and connectivity-restricted architectures.
"""

__version__ = "0.1.0"
