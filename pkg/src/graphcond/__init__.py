"""Exact perfect-matching counts, Pfaffian condensation and lozenge-tiling formulas."""

__version__ = "0.1.0"
