"""Analytic and Reidemeister torsion of discs and cones."""

__version__ = "0.1.0"
